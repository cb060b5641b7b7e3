import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from etnc import samplers
from etnc.arith import factorint, lcm
from etnc.dirichlet import generalized_bernoulli
from etnc.group_ring import GroupRing, minus_projection
from etnc.groups import FiniteAbelianGroup
from etnc.rings import QQ, cyclotomic_field
from etnc.stickelberger import (
    CyclotomicExtension,
    HypothesisError,
    PlaceData,
    auxiliary_prime,
    check_hypotheses,
    check_main_theorem_conditions,
    classical_stickelberger,
    dk_theta,
    euler_factor,
    smoothed_l_value,
    stickelberger_element,
    theta_integrality,
    verify_theta_functoriality,
    x_k_element,
)

seeds = st.integers(0, 2**32)


def field_of(G):
    return cyclotomic_field(lcm(G.exponent, 2))


# -- Euler factors ----------------------------------------------------------


def test_unramified_euler_factors():
    G = FiniteAbelianGroup((6,), (3,))
    A = GroupRing(G, QQ)
    v = PlaceData(7, 7, G.trivial_subgroup(), (1,))
    phi_inv = A.basis((5,))
    assert euler_factor(v, "h") == A.scalar(2) - phi_inv
    assert euler_factor(v, "h_prime") == A.one() - phi_inv * 7


@given(seeds)
def test_h_bar_with_unit_scalar_is_h(seed):
    v = samplers.random_place(random.Random(seed))
    assert euler_factor(v, "h_bar", c_v=1) == euler_factor(v, "h")


@given(seeds)
def test_euler_factors_are_nonzerodivisors(seed):
    rng = random.Random(seed)
    v = samplers.random_place(rng)
    F = field_of(v.group)
    for kind, c in (("h", None), ("h_prime", None), ("h_bar", rng.randint(1, 4))):
        x = euler_factor(v, kind, c_v=c)
        assert all(x.evaluate(psi, F) for psi in v.group.characters())


@given(seeds)
def test_euler_factor_independent_of_frobenius_representative(seed):
    rng = random.Random(seed)
    v = samplers.random_place(rng)
    i = rng.choice(sorted(v.inertia.elements))
    w = v.with_frobenius(v.group.mul(v.frobenius, i))
    for kind in ("h", "h_prime"):
        assert euler_factor(v, kind) == euler_factor(w, kind)


def test_unknown_euler_factor_kind():
    v = samplers.random_place(random.Random(0))
    with pytest.raises(ValueError):
        euler_factor(v, "h_bar")
    with pytest.raises(ValueError):
        euler_factor(v, "nonsense")


# -- theta ------------------------------------------------------------------


def test_theta_for_conductor_four():
    ext = CyclotomicExtension(4)
    A = GroupRing(ext.group, QQ)
    half_minus = (A.one() - A.basis(ext.group.c)) * Fraction(1, 2)
    assert stickelberger_element(ext, [], []) == half_minus * Fraction(1, 2)


def test_sigma_and_sigma_prime_must_be_disjoint():
    ext = CyclotomicExtension(23)
    assert check_hypotheses(ext, [23], [23], 3)["H1"] is False
    with pytest.raises(HypothesisError) as err:
        stickelberger_element(ext, [23], [23])
    assert err.value.condition == "H1"


def test_integrality_m23_p3():
    ext = CyclotomicExtension(23)
    theta = stickelberger_element(ext, [23], [5])
    r = theta_integrality(theta, 3, 40)
    assert r["integral"]


def test_hypotheses_m23():
    h = check_hypotheses(CyclotomicExtension(23), [23], [5], 3)
    assert h["H1"] and h["H2"] and h["H3prime_p"] and h["H4_p"]
    assert h["S_ram"] == [23] and h["S_wild"] == [] and h["S_bad"] == []


def test_hypotheses_m9_p3():
    # 3 is wildly ramified; the prime-to-3 inertia is {1, c}, so H^{I'} is totally real and S_bad is empty
    h = check_hypotheses(CyclotomicExtension(9), [], [], 3)
    assert h["S_wild"] == [3]
    assert h["S_bad"] == []
    assert h["H4_p"] is True
    assert h["H4"] is False
    assert h["H3prime_p"] is False  # zeta_3 lies in Q(zeta_9) and nothing smooths it


def test_smoothing_kills_mu():
    ext = CyclotomicExtension(9)
    assert check_hypotheses(ext, [3], [2], 3)["H3prime_p"] is True


@given(seeds)
def test_theta_nonzerodivisor(seed):
    rng = random.Random(seed)
    ext = samplers.random_extension(rng, max_m=40, max_order=24)
    sf, sp = samplers.sigma_sets(rng, ext)
    theta = stickelberger_element(ext, sf, sp)
    F = field_of(ext.group)
    assert all(theta.evaluate(psi, F) for psi in ext.odd_characters())
    assert minus_projection(theta) == theta


@given(seeds)
def test_adding_places_multiplies_by_euler_factors(seed):
    rng = random.Random(seed)
    ext = samplers.random_extension(rng, max_m=40, max_order=24)
    sf, sp = samplers.sigma_sets(rng, ext)
    v = auxiliary_prime(ext, 0, avoid=sf + sp)
    w = auxiliary_prime(ext, 0, avoid=sf + sp + [v])
    base = stickelberger_element(ext, sf, sp)
    assert stickelberger_element(ext, sf + [v], sp) == minus_projection(euler_factor(ext.place(v), "h")) * base
    assert stickelberger_element(ext, sf, sp + [w]) == euler_factor(ext.place(w), "h_prime") * base


def test_variance_negative_control():
    ext = CyclotomicExtension(11)
    base = stickelberger_element(ext, [11], [2])
    big = stickelberger_element(ext, [11, 3], [2])
    wrong = minus_projection(euler_factor(ext.place(3), "h_prime")) * base
    assert big != wrong


@given(seeds)
def test_theta_sharp_values(seed):
    rng = random.Random(seed)
    ext = samplers.random_extension(rng, max_m=40, max_order=24)
    sf, sp = samplers.sigma_sets(rng, ext)
    theta = stickelberger_element(ext, sf, sp)
    F = field_of(ext.group)
    for psi in ext.odd_characters():
        rhs = F.coerce(smoothed_l_value(ext, psi, sp))
        for l in sf:
            rhs = rhs * euler_factor(ext.place(l), "h").sharp().evaluate(psi, F)
        assert theta.sharp().evaluate(psi, F) == rhs


@pytest.mark.parametrize("m", samplers.valid_moduli(40))
def test_against_classical_stickelberger(m):
    ext = CyclotomicExtension(m)
    assert dk_theta(ext, sorted(factorint(m))) == minus_projection(classical_stickelberger(m, ext))


# -- functoriality ----------------------------------------------------------


def test_functoriality_trivial_subgroup():
    ext = CyclotomicExtension(15)
    r = verify_theta_functoriality(ext, ext.group.trivial_subgroup(), [3, 5], [2])
    assert r["equal"] and r["hbar_identity"]


def test_functoriality_nine_to_three():
    ext = CyclotomicExtension(9)
    S = next(S for S in (ext.group.subgroup([g]) for g in ext.group.elements) if S.order == 3)
    r = verify_theta_functoriality(ext, S, [3], [2])
    assert r["equal"] and r["hbar_identity"]
    assert r["lhs"].group.order == 2


@given(seeds)
def test_functoriality_random(seed):
    rng = random.Random(seed)
    ext = samplers.random_extension(rng)
    S = samplers.random_quotient(rng, ext)
    sf, sp = samplers.sigma_sets(rng, ext)
    r = verify_theta_functoriality(ext, S, sf, sp)
    assert r["equal"] and r["hbar_identity"]


def test_quotient_by_c_rejected():
    ext = CyclotomicExtension(7)
    with pytest.raises(ValueError):
        ext.quotient(ext.group.subgroup([ext.group.c]))


# -- x_k --------------------------------------------------------------------


def test_x_k_at_one():
    ext = CyclotomicExtension(3)
    assert x_k_element(ext, ext.odd_characters()[0], 1, 3)["value"] == 1


def test_x_k_quadratic_bernoulli_ratio():
    ext = CyclotomicExtension(3)
    chi = ext.odd_characters()[0]
    k = 1 + 2 * 3**5
    r = x_k_element(ext, chi, k, 3)
    psi = ext.dirichlet(chi.inverse())
    expected = generalized_bernoulli(psi, k).to_rational() / (k * generalized_bernoulli(psi, 1).to_rational())
    assert r["value"].to_rational() == expected
    assert r["integral"] and r["minus_one_valuation"] >= 1


@pytest.mark.parametrize("p", [3, 5, 7])
def test_x_k_congruent_to_one(p):
    checked = 0
    for m in samplers.valid_moduli(20):
        ext = CyclotomicExtension(m)
        for chi in ext.odd_characters():
            if chi.order % p == 0:
                continue
            try:
                r = x_k_element(ext, chi, 1 + (p - 1) * p, p, deplete=[p], precision=20)
            except ArithmeticError:
                continue  # the p-depleted value at s = 0 vanishes
            assert r["integral"] and r["minus_one_valuation"] >= 1
            checked += 1
    assert checked > 20


# -- main theorem conditions ----------------------------------------------


def test_conditions_examples():
    G = FiniteAbelianGroup((2,), (1,))
    tame = check_main_theorem_conditions(G, [PlaceData("p", 3, G.trivial_subgroup(), (1,), True)], 3)
    assert tame["i"] and tame["equivalent"]
    split_whole = check_main_theorem_conditions(G, [PlaceData("p", 3, G.whole(), (0,), True)], 3)
    assert split_whole["ii"] and split_whole["equivalent"]


def test_conditions_fail_together():
    # G = Z/2 x Z/3, p = 3, one p-adic place with inertia and decomposition the 3-part
    G = FiniteAbelianGroup((2, 3), (1, 0))
    v = PlaceData("p", 3, G.subgroup([(0, 1)]), (0, 1), True)
    r = check_main_theorem_conditions(G, [v], 3)
    assert not r["i"] and not r["ii"]
    assert not r["a"] and not r["b"] and r["equivalent"]


@given(seeds)
def test_condition_equivalence(seed):
    G, places, p = samplers.random_decomposition_config(random.Random(seed))
    assert check_main_theorem_conditions(G, places, p)["equivalent"]
