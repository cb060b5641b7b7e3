import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from etnc.eisenstein import checks
from etnc.eisenstein.constant_terms import (
    CuspData,
    TauLaurent,
    check_constant_terms,
    const_term_olW_derived,
    const_term_olW_direct,
    const_term_W,
    eisenstein_constant_term,
    euler_sum,
    theta_sharp_closed,
    theta_sharp_value,
)
from etnc.eisenstein.determinant import check_tw1_coeff, random_t_instance, t_determinant_identity, tw1_coeff_a
from etnc.eisenstein.expansions import (
    QExpansion,
    eisenstein_series,
    hecke_T,
    hecke_U,
    level_raise,
    modified_olW1,
    modified_W_k,
)
from etnc.eisenstein.family import family_U_action, ordinary_projector
from etnc.eisenstein.generators import random_setting
from etnc.eisenstein.ideals import IdealIndex
from etnc.eisenstein.setting import ArithmeticSetting, SettingError, SettingPrime
from etnc.eisenstein.units import random_unit_config, y_unit_report
from etnc.groups import FiniteAbelianGroup, Subgroup
from etnc.linalg import mat_mul

seeds = st.integers(0, 2**32)
BOUND = 40

G = FiniteAbelianGroup((2, 3), (1, 0))
P3 = Subgroup(G, [(0, 1)])
C2 = Subgroup(G, [(1, 0)])
TRIV = G.trivial_subgroup()


def wild_setting(frob=(0, 1)):
    """p1 wildly ramified over 3, q1 tame with inertia G', q2 tame with 3-group inertia, t1 auxiliary."""
    return ArithmeticSetting(G, 3, [
        SettingPrime("p1", 3, P3, frob, True, 2),
        SettingPrime("q1", 7, C2, (0, 1), False, 1),
        SettingPrime("q2", 13, P3, (1, 0), False, 1),
        SettingPrime("t1", 2, TRIV, (1, 1), False, 0)], IdealIndex({"p1": 2, "q1": 1, "q2": 1}))


def unramified_p_setting():
    """p1 unramified and outside the level, so P = P_ba = 1 and P' = p1."""
    return ArithmeticSetting(G, 3, [
        SettingPrime("p1", 3, TRIV, (0, 1), True, 0),
        SettingPrime("q1", 7, C2, (0, 1), False, 1),
        SettingPrime("t1", 2, TRIV, (1, 1), False, 0)], IdealIndex({"q1": 1}))


def setting(seed, **kw):
    return random_setting(random.Random(seed), **kw)


# -- ideals -----------------------------------------------------------------

ideals = st.dictionaries(st.sampled_from("abcd"), st.integers(0, 3)).map(IdealIndex)


@given(ideals, ideals)
def test_ideal_arithmetic(a, b):
    assert a.divides(a * b) and b.divides(a * b)
    assert a.gcd(b) * a.lcm(b) == a * b
    assert (a * b) / b == a
    assert a.coprime(b) == a.gcd(b).is_one()


@given(ideals)
def test_mobius_and_hall_divisors(a):
    assert sum(d.mobius() for d in a.divisors()) == (1 if a.is_one() else 0)
    for h in a.hall_divisors():
        assert h.hall_divides(a) and h.coprime(a / h)
    assert len(list(a.hall_divisors())) == 2 ** len(a.support)


def test_negative_exponent_rejected():
    with pytest.raises(ValueError):
        IdealIndex({"a": -1})


# -- settings ---------------------------------------------------------------


def test_divisors_of_the_level():
    s = wild_setting()
    assert s.P == IdealIndex({"p1": 2})
    assert s.P_ba == s.P and s.P_p == s.P
    assert s.n_p() == IdealIndex({"p1": 2, "q2": 1})
    assert s.P_prime.is_one()
    assert wild_setting(frob=(1, 0)).P_ba.is_one()


def test_setting_rejects_bad_tame_prime():
    with pytest.raises(SettingError):
        ArithmeticSetting(G, 3, [SettingPrime("q1", 5, P3, (0, 0), False, 1)], IdealIndex({"q1": 1}))


def test_setting_rejects_square_in_tame_part():
    with pytest.raises(SettingError):
        ArithmeticSetting(G, 3, [SettingPrime("q1", 7, C2, (0, 0), False, 1)], IdealIndex({"q1": 2}))


def test_setting_rejects_even_character():
    with pytest.raises(SettingError):
        ArithmeticSetting(G, 3, [SettingPrime("t1", 2, TRIV, (0, 0), False, 0)], IdealIndex(), chi_exps=[0, 0])


def test_setting_json_round_trip():
    s = wild_setting()
    back = ArithmeticSetting.from_json(s.to_json())
    assert back.to_json() == s.to_json()


@given(seeds)
def test_random_settings_are_valid_and_derived_settings_keep_shape(seed):
    s = setting(seed)
    s.validate()
    assert all(checks.check_derived_settings(s, random.Random(seed)).values())


# -- Eisenstein series ------------------------------------------------------


@pytest.mark.parametrize("k", [1, 3, 5])
def test_prime_coefficients(k):
    s = wild_setting()
    E = eisenstein_series(s, k, bound=BOUND)
    t1 = IdealIndex.prime("t1")
    assert E.coeff(t1) == s.proj(s.frob("t1")) + s.A.scalar(2 ** (k - 1))
    assert E.coeff(IdealIndex.prime("q1")) == s.A.scalar(7 ** (k - 1))
    assert E.coeff(IdealIndex.one()) == s.A.one()


def test_auxiliary_ideal_removes_divisors():
    s = unramified_p_setting()
    E = eisenstein_series(s, 3, R=IdealIndex.prime("p1"), bound=BOUND)
    assert E.coeff(IdealIndex.prime("p1")) == s.proj(s.frob("p1"))


def test_bad_arguments():
    s = wild_setting()
    with pytest.raises(ValueError):
        eisenstein_series(s, 2)
    with pytest.raises(ValueError):
        eisenstein_series(s, 1, R=IdealIndex.prime("q1"))
    with pytest.raises(ValueError):
        hecke_T(eisenstein_series(s, 1, bound=BOUND), "q1")


@given(seeds)
def test_operator_facts(seed):
    s = setting(seed)
    r = checks.check_operator_facts(s, random.Random(seed), BOUND)
    assert all(r.values()), [k for k, v in r.items() if not v]


def test_operators_on_zero():
    s = wild_setting()
    Z = QExpansion.zero(s, 1, s.level, BOUND)
    assert hecke_T(Z, "t1").is_zero() and hecke_U(Z, "p1").is_zero()


def test_level_raise_examples():
    s = wild_setting()
    E = eisenstein_series(s, 1, bound=BOUND)
    assert level_raise(E, IdealIndex.one()) == E
    m = IdealIndex.prime("t1")
    raised = level_raise(E, m)
    assert raised.coeff(m) == E.coeff(IdealIndex.one())
    assert raised.coeff(IdealIndex.prime("q1")) == s.A.zero()


def test_bound_shrinks_and_mixing_bounds_fails():
    s = wild_setting()
    E = eisenstein_series(s, 1, bound=BOUND)
    T = hecke_T(E, "t1")
    assert T.bound == BOUND // 2
    with pytest.raises(ValueError):
        T + E
    with pytest.raises(KeyError):
        T.coeff(IdealIndex({"t1": 2, "q1": 1}))


@pytest.mark.parametrize("k", [1, 3])
def test_hecke_identities_fixed_setting(k):
    s = wild_setting()
    for fn in (checks.check_hecke_E, checks.check_hecke_W):
        r = fn(s, k, None, BOUND)
        assert r and all(r.values()), r
    assert all(checks.check_w_spec(s, k, BOUND).values())


def test_hecke_negative_control():
    # a wrong eigenvalue (N(l)^k instead of N(l)^{k-1}) must be caught
    s = wild_setting()
    E = eisenstein_series(s, 3, bound=BOUND)
    wrong = E.scale(s.proj(s.frob("t1")) + s.A.scalar(2**3))
    assert not hecke_T(E, "t1").agrees_with(wrong.truncate(BOUND // 2))


@given(seeds)
def test_hecke_suite_random(seed):
    s = setting(seed)
    r = checks.hecke_suite(s, random.Random(seed), BOUND, 30)
    assert all(r.values()), [k for k, v in r.items() if not v]


# -- W_k and W̄_1 ----------------------------------------------------------


def test_empty_modification():
    s = unramified_p_setting()
    assert s.n_p().is_one()
    for k in (1, 3):
        assert modified_W_k(s, k, bound=BOUND) == eisenstein_series(s, k, bound=BOUND)
    assert s.P_ba.is_one()
    assert modified_olW1(s, bound=BOUND) == modified_W_k(s, 1, bound=BOUND)


def test_modification_changes_the_series():
    s = wild_setting()
    assert not modified_W_k(s, 1, bound=BOUND).agrees_with(eisenstein_series(s, 1, bound=BOUND))


def test_olW_eigenvalue():
    s = wild_setting()
    r = checks.check_hecke_olW(s, BOUND, 30)
    assert r["olW:T_t1"] and r["olW:e_ord_p1"]


def test_ordinary_projector_cases():
    s = unramified_p_setting()
    seen = set()
    for k in (1, 3):
        limit, closed, case, _ = checks.ordinary_W(s, k, "p1", 30)
        assert limit == closed
        seen.add(case)
    s = wild_setting()
    limit, closed, case, _ = checks.ordinary_W(s, 3, "p1", 30)
    assert limit == closed
    seen.add(case)
    assert seen == {"W_1", "geometric", "zero"}


def test_tw1_coefficients():
    s = wild_setting()
    r = check_tw1_coeff(s)
    assert r["a"] and r["b"] and r["cases"] == 4
    one = IdealIndex.one()
    nu = s.nu(P3)
    assert tw1_coeff_a(s, one) == s.QG.one() + nu


@given(seeds)
def test_tw1_random(seed):
    r = check_tw1_coeff(setting(seed, want_p_ba=True))
    assert r["a"] and r["b"]


# -- the U_p family ---------------------------------------------------------


def test_family_single_prime_shape():
    s = unramified_p_setting()
    fam = family_U_action(s, "p1", S=frozenset({"q1"}))
    A = s.A
    psi = s.proj(s.frob("p1"))
    assert fam["U"] == [[psi, A.zero()], [A.one(), A.one()]]
    prod_ = mat_mul(fam["U"], fam["U_inverse"], A.zero())
    assert prod_ == [[A.one(), A.zero()], [A.zero(), A.one()]]


def test_family_raised_modulus_is_fixed():
    s = unramified_p_setting()
    fam = family_U_action(s, "p1")
    assert fam["U"] == [[s.A.one()]]


def test_ordinary_projector_is_idempotent():
    s = unramified_p_setting()
    fam = family_U_action(s, "p1", S=frozenset({"q1"}))
    E, _ = ordinary_projector(s, fam["U"], 20)
    zero = E[0][0].parent.zero()
    assert mat_mul(E, E, zero) == E


# -- the determinant identity ----------------------------------------------


def test_t_identity_without_p_adic_structure():
    s = wild_setting(frob=(1, 0))
    assert s.P_ba.is_one() and s.P_prime.is_one()
    z = s.QG.basis((1, 2), 2)
    r = t_determinant_identity(s, [[z]], [[]], [[]], IdealIndex.one())
    assert r["identity"] and r["raise_to_nP'"]
    assert r["rhs"] == s.project(z)


def test_t_identity_one_by_one():
    s = wild_setting()
    u = s.QG.basis((1, 1), 3)
    alpha = s.QG.basis((0, 2), -1)
    for a in (IdealIndex.one(), IdealIndex.prime("p1")):
        r = t_determinant_identity(s, [[]], [[u]], [[alpha]], a)
        assert r["identity"] and r["dets_agree"] and r["induction"]


@given(seeds)
def test_t_identity_random(seed):
    rng = random.Random(seed)
    for _ in range(50):
        s = random_setting(rng, want_p_ba=True)
        inst = random_t_instance(s, rng)
        if inst is not None:
            break
    r = t_determinant_identity(s, *inst)
    assert r["raise_to_nP'"] and r["dets_agree"] and r["identity"] and r["induction"]


def test_t_identity_negative_control():
    s = wild_setting()
    u = s.QG.basis((1, 1), 3)
    alpha = s.QG.basis((0, 2), -1)
    good = t_determinant_identity(s, [[]], [[u]], [[alpha]], IdealIndex.one())
    bad = t_determinant_identity(s, [[]], [[u + s.QG.one()]], [[alpha]], IdealIndex.one())
    assert bad["rhs"] != good["rhs"]


# -- constant terms ---------------------------------------------------------


def test_tau_laurent_ring():
    from etnc.rings import cyclotomic_field

    F = cyclotomic_field(6)
    x = TauLaurent.monomial(F, 2, 1, "L")
    y = TauLaurent.monomial(F, 3, -1)
    assert (x * y).terms == {(0, "L"): F.coerce(6)}
    assert (x - x).is_zero()
    assert x.is_homogeneous() and not (x + y).is_homogeneous()
    with pytest.raises(ValueError):
        x * x


def test_constant_term_vanishes_off_both_loci():
    s = wild_setting()
    cusp = CuspData(IdealIndex.prime("p1"))
    for psi in s.psi_characters():
        assert const_term_W(s, psi, 1, s.level, cusp).is_zero()


def test_nontrivial_modulus_kills_eisenstein_constant_term():
    s = wild_setting()
    cusp = CuspData(s.level)
    for psi in s.psi_characters():
        assert eisenstein_constant_term(s, psi, 3, s.level, IdealIndex(), cusp).is_zero()
        assert not eisenstein_constant_term(s, psi, 1, s.level, IdealIndex(), cusp).is_zero()


def test_olW_constant_term_only_on_c_infinity():
    s = wild_setting()
    psi = s.psi_characters()[0]
    with pytest.raises(ValueError):
        const_term_olW_direct(s, psi, CuspData(IdealIndex()))
    with pytest.raises(ValueError):
        const_term_olW_derived(s, psi, CuspData(IdealIndex()))


def test_constant_terms_fixed_setting():
    s = wild_setting()
    for psi in s.psi_characters():
        lhs, rhs = euler_sum(s, psi)
        assert lhs == rhs
        assert theta_sharp_value(s, psi) == theta_sharp_closed(s, psi)
        cusp = CuspData(s.level)
        assert const_term_olW_direct(s, psi, cusp) == const_term_olW_derived(s, psi, cusp)


@given(seeds)
def test_constant_terms_random(seed):
    s = setting(seed)
    r = check_constant_terms(s, random.Random(seed))
    assert r["olW_agree"] and r["euler_sum"] and r["theta_sharp"] and r["homogeneous"]


# -- the unit y_p -----------------------------------------------------------


@given(seeds, st.booleans())
def test_y_unit(seed, pgroup):
    r = y_unit_report(random_unit_config(random.Random(seed), p_group_inertia=pgroup))
    assert r["ok"] and r["unit"]
    if not pgroup:
        assert r["is_one"]
