"""The ten primary acceptance criteria, each run at its time limit.

Every test prints one line "PASS|FAIL <n> <name> (<seconds>s / limit <limit>s)".
"""

import time
from fractions import Fraction

import pytest

from etnc.dirichlet import DirichletCharacter, l_value, minus_class_number
from etnc.verify import Config, run_suite

SEED = 0


def report(capsys, number, name, ok, elapsed, limit):
    line = f"{'PASS' if ok and elapsed < limit else 'FAIL'} {number:2d} {name} ({elapsed:.2f}s / limit {limit}s)"
    with capsys.disabled():
        print("\n" + line)
    assert ok, line
    assert elapsed < limit, line


def run_checks(suite, names, **cfg):
    t = time.perf_counter()
    rep = run_suite(suite, SEED, Config(**cfg), checks=names)
    elapsed = time.perf_counter() - t
    assert sorted(c.name for c in rep.checks) == sorted(names)
    return rep, elapsed


def describe(rep):
    return ", ".join(f"{c.name} {c.passed}/{c.cases}" for c in rep.checks)


def test_01_golden_values(capsys):
    t = time.perf_counter()
    chi4 = DirichletCharacter.from_index(4, 1)
    chi3 = DirichletCharacter.from_index(3, 1)
    ok = l_value(chi4).to_rational() == Fraction(1, 2) and l_value(chi3).to_rational() == Fraction(1, 3)
    elapsed = time.perf_counter() - t
    report(capsys, 1, "L(chi_-4,0)=1/2, L(chi_-3,0)=1/3", ok, elapsed, 1)
    t = time.perf_counter()
    ok = minus_class_number(23) == 3
    report(capsys, 1, "h^-(Q(zeta_23)) = 3", ok, time.perf_counter() - t, 5)


def test_02_integrality(capsys):
    rep, elapsed = run_checks("stickelberger", ["integrality"], precision=40)
    c = rep.checks[0]
    report(capsys, 2, f"theta integrality, {describe(rep)}", rep.passed and c.cases == 4, elapsed, 30)


def test_03_functoriality(capsys):
    rep, elapsed = run_checks("stickelberger", ["functoriality"], pairs=30)
    c = rep.checks[0]
    report(capsys, 3, f"functoriality, {describe(rep)}", rep.passed and c.passed >= 30, elapsed, 60)


def test_04_hecke_fuzz(capsys):
    rep, elapsed = run_checks("eisenstein", ["hecke_identities"], iters=100, bound=60)
    c = rep.checks[0]
    report(capsys, 4, f"Hecke identities, bound 60, {describe(rep)}", rep.passed and c.passed >= 100, elapsed, 120)


def test_05_coefficient_calculus(capsys):
    rep, elapsed = run_checks("eisenstein", ["tw1_coefficients", "t_determinant"], iters=50)
    ok = rep.passed and all(c.passed >= 50 for c in rep.checks)
    report(capsys, 5, f"coefficient closed forms and determinant identity, {describe(rep)}", ok, elapsed, 120)


def test_06_constant_terms(capsys):
    rep, elapsed = run_checks("eisenstein", ["constant_terms"], iters=50)
    c = rep.checks[0]
    report(capsys, 6, f"constant terms, {describe(rep)}", rep.passed and c.passed >= 50, elapsed, 60)


def test_07_fitting(capsys):
    names = ["composition", "diagram", "direct_sum", "lift_independence", "order_lemma", "order_two_routes",
             "order_brute_force"]
    rep, elapsed = run_checks("fitting", names, precision=40)
    report(capsys, 7, f"Fitting ideal lemmas, {describe(rep)}", rep.passed, elapsed, 120)


def test_08_ritter_weiss(capsys):
    names = ["coker_f_bar", "variance_membership", "f_bar_injective", "minus_order"]
    rep, elapsed = run_checks("ritter_weiss", names, cases=50)
    ok = rep.passed and all(c.passed >= 50 for c in rep.checks)
    report(capsys, 8, f"local module identities, {describe(rep)}", ok, elapsed, 60)


def test_09_condition_equivalence(capsys):
    rep, elapsed = run_checks("stickelberger", ["condition_equivalence"], configs=200)
    c = rep.checks[0]
    report(capsys, 9, f"condition equivalence, {describe(rep)}", rep.passed and c.passed >= 200, elapsed, 30)


def test_10_units(capsys):
    rep, elapsed = run_checks("eisenstein", ["y_unit"], iters=50, precision=40)
    c = rep.checks[0]
    report(capsys, 10, f"y_p unit with verified inverse, {describe(rep)}", rep.passed and c.passed >= 50, elapsed, 30)
