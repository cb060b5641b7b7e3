import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from etnc.fitting import (
    PresentedHom,
    PresentedModule,
    PrincipalFractionalIdeal,
    brute_force_order,
    check_composition,
    check_diagram,
    check_direct_sum,
    check_lift_independence,
    check_order_formula,
    check_order_lemma,
    fitting_ideal,
    fitting_of_hom,
    ideal_equal,
    make_ring,
    module_order,
    module_order_report,
    random_element,
    random_nonunit,
    random_square_module,
    random_unimodular,
    smith_reduce,
)
from etnc.linalg import mat_mul
from etnc.rings import PrecisionError, integers_mod

P = 3
N = 20


def det_laplace(M, zero):
    """Cofactor expansion along the first row, independent of the library's elimination."""
    n = len(M)
    if n == 1:
        return M[0][0]
    out = zero
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * det_laplace(minor, zero)
        out = out + term if j % 2 == 0 else out - term
    return out


# -- Smith reduction --------------------------------------------------------


def test_smith_diagonal():
    R = integers_mod(P, N)
    assert smith_reduce([[P, 0], [0, P * P]], R) == ([1, 2], False)


def test_smith_unit_entry_clears_a_pivot():
    R = integers_mod(P, N)
    assert smith_reduce([[P, 1], [0, P]], R)[0] == [0, 2]


@given(st.integers(0, 2**32))
def test_smith_invariants_stable_under_unimodular_change(seed):
    rng = random.Random(seed)
    R = make_ring(P, N)
    D = [[R.scalar(P ** rng.randint(0, 4)) if i == j else R.zero() for j in range(3)] for i in range(3)]
    before = smith_reduce(D, R)[0]
    M = mat_mul(mat_mul(random_unimodular(R, 3, rng), D, R.zero()), random_unimodular(R, 3, rng), R.zero())
    assert smith_reduce(M, R)[0] == before


# -- Fitting ideals ---------------------------------------------------------


def test_fitting_of_p_and_diagonal():
    R = make_ring(P, N)
    assert fitting_ideal(PresentedModule(R, [[P]])).valuation == 1
    F = fitting_ideal(PresentedModule(R, [[P, 0], [0, 27]]))
    assert F.valuation == 4 and F.principal == R.scalar(81)


def test_fitting_diagonal_over_group_ring():
    R = make_ring(P, N, (3,))
    rng = random.Random(1)
    a, b = random_nonunit(R, rng), random_nonunit(R, rng)
    F = fitting_ideal(PresentedModule(R, [[a, R.zero()], [R.zero(), b]]))
    assert F.principal == a * b


def test_fitting_zero_when_too_few_relations():
    R = make_ring(P, N, (3,))
    assert fitting_ideal(PresentedModule(R, [[R.one()], [R.one()]], rows=2)).is_zero()


@pytest.mark.parametrize("seed", range(5))
def test_fitting_3x3_against_cofactor_expansion(seed):
    rng = random.Random(seed)
    R = make_ring(P, N, (3,))
    M = [[random_element(R, rng) for _ in range(3)] for _ in range(3)]
    F = fitting_ideal(PresentedModule(R, M))
    assert F.principal == det_laplace(M, R.zero())


def test_fitting_nonsquare_minors():
    R = make_ring(P, N, (3,))
    one, z = R.one(), R.zero()
    M = [[R.scalar(3), z, one], [z, R.scalar(9), z]]
    F = fitting_ideal(PresentedModule(R, M, rows=2))
    assert len(F.generators) == 3 and R.scalar(27) in F.generators


# -- orders -----------------------------------------------------------------


def test_module_order_examples():
    R = make_ring(P, N)
    assert module_order(PresentedModule(R, [[P]])) == P
    assert module_order(PresentedModule(R, [[P, 0], [0, P]])) == P * P


@pytest.mark.parametrize("seed", range(3))
def test_order_against_enumeration_z5_group(seed):
    rng = random.Random(seed)
    R = make_ring(3, 2, (5,))
    for _ in range(50):
        mod = PresentedModule(R, [[random_element(R, rng)]])
        try:
            rep = module_order_report(mod, slack=0)
        except PrecisionError:
            continue
        assert rep.order == brute_force_order(mod)
        return
    pytest.fail("no presentation within precision")


@pytest.mark.parametrize("seed", range(4))
def test_order_two_routes(seed):
    R = make_ring(P, N, (3,), 4)
    r = check_order_formula(random_square_module(R, 2, random.Random(seed)))
    assert r["equal"] and r["certified"]


def test_enumeration_refuses_large_rings():
    R = make_ring(3, 10, (3,))
    with pytest.raises(ValueError):
        brute_force_order(PresentedModule(R, [[R.scalar(3), R.zero()], [R.zero(), R.scalar(3)]]))


# -- Fitting ideals of maps -------------------------------------------------


def test_fitting_of_identity_and_of_p():
    R = make_ring(P, N, (3,))
    M = PresentedModule(R, [[R.scalar(9)]])
    ident = fitting_of_hom(PresentedHom(M, M, [[R.one()]]))
    assert ideal_equal(ident, PrincipalFractionalIdeal(R.one()))
    F = make_ring(P, N)
    free = PresentedModule(F, [[]], rows=1)
    times_p = fitting_of_hom(PresentedHom(free, free, [[F.scalar(P)]]))
    assert ideal_equal(times_p, PrincipalFractionalIdeal(F.scalar(P)))
    assert not ideal_equal(times_p, PrincipalFractionalIdeal(F.scalar(P * P)))


def test_ill_defined_map_rejected():
    R = make_ring(P, N)
    src = PresentedModule(R, [[R.scalar(3)]])
    tgt = PresentedModule(R, [[R.scalar(9)]])
    with pytest.raises(ValueError):
        PresentedHom(src, tgt, [[R.one()]])


def test_ideal_equal_examples():
    R = make_ring(P, N, (3,))
    rng = random.Random(7)
    x = random_nonunit(R, rng)
    u = R.one() + random_element(R, rng) * 3
    assert ideal_equal(PrincipalFractionalIdeal(x), PrincipalFractionalIdeal(u * x))
    assert not ideal_equal(PrincipalFractionalIdeal(R.scalar(3)), PrincipalFractionalIdeal(R.scalar(9)))
    theta = random_nonunit(R, rng)
    assert ideal_equal(PrincipalFractionalIdeal(theta), PrincipalFractionalIdeal(theta.sharp().sharp()))


def test_json_round_trip():
    R = make_ring(P, 10, (3,), 4)
    mod = random_square_module(R, 2, random.Random(3))
    back = PresentedModule.from_json(mod.to_json())
    assert back.matrix == mod.matrix


# -- the lemma suite on every test ring ------------------------------------

RINGS = [(3, (3,), 1), (3, (9,), 1), (3, (3, 3), 1), (3, (3,), 4), (3, (), 4), (5, (5,), 1), (3, (), 1)]


@pytest.mark.parametrize("p,group,e", RINGS)
@pytest.mark.parametrize("check", [check_composition, check_diagram, check_direct_sum, check_lift_independence])
def test_multiplicativity_lemmas(p, group, e, check):
    R = make_ring(p, 40, group, e)
    r = check(R, random.Random(f"{p}:{group}:{e}:{check.__name__}"))
    assert r["equal"] and r["certified"]


@pytest.mark.parametrize("p,group,e", RINGS)
def test_order_lemma(p, group, e):
    assert check_order_lemma(make_ring(p, 40, group, e), random.Random(11))["ok"]


def test_negative_control_wrong_product_detected():
    # dropping one factor from the composition product must be noticed
    R = make_ring(3, 40, (3,))
    from etnc.fitting import compare_ideals, random_hom, random_module

    rng = random.Random(5)
    M = random_module(R, 2, 1, rng)
    phi = random_hom(M, rng)
    phi2 = random_hom(phi.target, rng)
    a, b = fitting_of_hom(phi), fitting_of_hom(phi2)
    c = fitting_of_hom(phi.compose(phi2))
    assert compare_ideals(c, a * b).equal
    if not ideal_equal(b, PrincipalFractionalIdeal(R.one())):
        assert not compare_ideals(c, a).equal
