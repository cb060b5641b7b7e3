import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from etnc.group_ring import (
    GroupRing,
    character_idempotent,
    chi_component,
    gr_multiply,
    minus_projection,
    norm_element,
    reduce_mod_norm,
    ring_with_N_split,
    sharp_involution,
    split_kernel_dimension,
    try_invert,
)
from etnc.groups import FiniteAbelianGroup
from etnc.rings import QQ, ZZ, cyclotomic_field, integers_mod, unramified_ring
from etnc.samplers import CM_SHAPES

Z2 = FiniteAbelianGroup((2,), (1,))
C = (1,)


def elements_of(A):
    n = A.group.order
    return st.lists(st.integers(-5, 5), min_size=n, max_size=n).map(
        lambda v: A.from_vector([A.ring.coerce(a) for a in v]))


shapes = st.sampled_from(CM_SHAPES)


def ring_and_elements(count, ring=QQ):
    return shapes.flatmap(lambda s: st.tuples(
        st.just(GroupRing(FiniteAbelianGroup(*s), ring)),
        *[elements_of(GroupRing(FiniteAbelianGroup(*s), ring))] * count))


# -- multiplication ---------------------------------------------------------


def test_one_times_c_relations():
    A = GroupRing(Z2, ZZ)
    one, c = A.one(), A.basis(C)
    assert (one + c) * (one - c) == A.zero()
    assert (one + c) * (one + c) == (one + c) * 2


@given(ring_and_elements(3))
def test_convolution_ring_axioms(data):
    A, x, y, z = data
    assert gr_multiply(A.one(), x) == x
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z


def test_mismatched_groups_rejected():
    A = GroupRing(Z2, QQ)
    B = GroupRing(FiniteAbelianGroup((4,), (2,)), QQ)
    with pytest.raises(ValueError):
        A.one() * B.one()


def test_no_stored_zero_coefficients():
    A = GroupRing(Z2, QQ)
    x = A.one() + A.basis(C) - A.basis(C)
    assert list(x.items()) == [((0,), Fraction(1))]


# -- minus part -------------------------------------------------------------


def test_minus_projection_of_one_and_c():
    A = GroupRing(Z2, QQ)
    one, c = A.one(), A.basis(C)
    half = (one - c) * Fraction(1, 2)
    assert minus_projection(one) == half
    assert minus_projection(c) == -half


@given(ring_and_elements(1))
def test_minus_projection_idempotent_and_kills_plus(data):
    A, x = data
    m = minus_projection(x)
    assert minus_projection(m) == m
    assert (A.one() + A.basis(A.group.c)) * m == A.zero()


def test_minus_projection_needs_two_inverted():
    with pytest.raises(ValueError):
        minus_projection(GroupRing(Z2, ZZ).one())
    # an odd p-adic ring is fine
    A = GroupRing(Z2, integers_mod(3, 10))
    assert minus_projection(A.one()) * 2 == A.one() - A.basis(C)


# -- sharp ------------------------------------------------------------------


def test_sharp_of_group_element():
    G = FiniteAbelianGroup((6,), (3,))
    A = GroupRing(G, QQ)
    assert sharp_involution(A.basis((1,))) == A.basis((5,))


@given(ring_and_elements(2))
def test_sharp_is_involutive_automorphism(data):
    A, x, y = data
    assert x.sharp().sharp() == x
    assert (x * y).sharp() == x.sharp() * y.sharp()
    assert (x + y).sharp() == x.sharp() + y.sharp()


# -- norm elements ----------------------------------------------------------


def test_norm_element_examples():
    A = GroupRing(Z2, ZZ)
    assert norm_element(A, Z2.trivial_subgroup()) == A.one()
    assert norm_element(A, Z2.subgroup([C])) == A.one() + A.basis(C)


@given(shapes, st.data())
def test_norm_element_absorbs_its_subgroup(shape, data):
    G = FiniteAbelianGroup(*shape)
    A = GroupRing(G, ZZ)
    N = G.subgroup([data.draw(st.sampled_from(G.elements))])
    nu = norm_element(A, N)
    g = data.draw(st.sampled_from(sorted(N.elements)))
    assert nu * A.basis(g) == nu
    assert nu * nu == nu * N.order


# -- character idempotents -------------------------------------------------


def test_idempotents_on_z2():
    F = cyclotomic_field(2)
    A = GroupRing(Z2, F)
    one, c = A.one(), A.basis(C)
    for psi in Z2.characters():
        e = character_idempotent(psi, F)
        expected = (one - c) if psi.is_odd() else (one + c)
        assert e == expected * Fraction(1, 2)


def test_idempotents_on_z6_exhaustive():
    G = FiniteAbelianGroup((6,), (3,))
    F = cyclotomic_field(6)
    A = GroupRing(G, F)
    es = {psi: character_idempotent(psi, F) for psi in G.characters()}
    total = A.zero()
    odd = A.zero()
    for a, ea in es.items():
        for b, eb in es.items():
            assert ea * eb == (ea if a == b else A.zero())
        total = total + ea
        if a.is_odd():
            odd = odd + ea
    assert total == A.one()
    assert odd == (A.one() - A.basis((3,))) * Fraction(1, 2)


def test_character_parity_is_value_at_c():
    F = cyclotomic_field(12)
    for shape in CM_SHAPES:
        G = FiniteAbelianGroup(*shape)
        for psi in G.characters():
            v = psi.value(G.c, cyclotomic_field(max(psi.order, 2)))
            assert psi.is_odd() == (v == -1)
    del F


# -- chi components ---------------------------------------------------------


def test_chi_component_trivial_character_sums_coefficients():
    G = FiniteAbelianGroup((2,), (1,))
    R = integers_mod(3, 10)
    A = GroupRing(G, R)
    x = A.from_vector([R.coerce(4), R.coerce(7)])
    triv = next(chi for chi in G.p_split(3).Gprime.characters() if chi.is_trivial())
    y = chi_component(x, triv)
    assert y.augmentation() == y.ring.coerce(11)
    assert len(list(y.items())) == 1


def test_chi_component_kills_norm_of_prime_to_p_part():
    G = FiniteAbelianGroup((6, 3), (3, 0))
    R = integers_mod(3, 10)
    A = GroupRing(G, R)
    split = G.p_split(3)
    nu = A.sum_of([split.embed_prime(g) for g in split.Gprime.elements])
    for chi in split.Gprime.characters():
        if not chi.is_trivial():
            assert not chi_component(nu, chi, split)


@given(shapes, st.sampled_from([3, 5]), st.data())
def test_chi_component_is_a_ring_map_and_respects_sharp(shape, p, data):
    G = FiniteAbelianGroup(*shape)
    R = integers_mod(p, 20)
    A = GroupRing(G, R)
    x = data.draw(elements_of(A))
    y = data.draw(elements_of(A))
    split = G.p_split(p)
    chi = data.draw(st.sampled_from(split.Gprime.characters()))
    assert chi_component(x * y, chi, split) == chi_component(x, chi, split) * chi_component(y, chi, split)
    assert chi_component(x + y, chi, split) == chi_component(x, chi, split) + chi_component(y, chi, split)
    assert chi_component(x.sharp(), chi, split) == chi_component(x, chi.inverse(), split).sharp()


def test_chi_component_rejects_p_divisible_character():
    G = FiniteAbelianGroup((6,), (3,))
    A = GroupRing(G, integers_mod(3, 5))
    with pytest.raises(ValueError):
        chi_component(A.one(), G.characters()[1], G.p_split(3))


# -- local inversion --------------------------------------------------------


def test_try_invert_examples():
    P = FiniteAbelianGroup((3,))
    R = integers_mod(3, 4)
    A = GroupRing(P, R)
    assert try_invert(A.one()) == A.one()
    assert try_invert(A.scalar(3)) is None
    x = A.one() + A.norm_element(P.whole())
    y = try_invert(x)
    assert y is not None and x * y == A.one()


@pytest.mark.parametrize("p,N,orders,e", [(3, 1, (3,), 1), (3, 2, (3,), 1), (3, 1, (3,), 4)])
def test_locality_exhaustive(p, N, orders, e):
    O = integers_mod(p, N) if e == 1 else unramified_ring(p, N, e)
    P = FiniteAbelianGroup(orders)
    A = GroupRing(P, O)
    if e == 1:
        coeffs = [O.coerce(a) for a in range(O.modulus)]
    else:
        from etnc.rings import UElem
        coeffs = [UElem(O, t) for t in itertools.product(range(O.modulus), repeat=O.degree)]
    for vec in itertools.product(coeffs, repeat=P.order):
        x = A.from_vector(list(vec))
        y = try_invert(x)
        assert (y is not None) == O.is_unit(x.augmentation())
        if y is not None:
            assert x * y == A.one()


# -- the split ring Z_p[G/N] x Z_p[G]/(nu_N) ------------------------------


def test_ring_with_N_split_examples():
    G = FiniteAbelianGroup((6,), (3,))
    R = integers_mod(3, 10)
    A = GroupRing(G, R)
    N = G.subgroup([(2,)])
    first, second = ring_with_N_split(A.norm_element(N), N)
    assert first == first.parent.scalar(3)
    assert not second
    first, second = ring_with_N_split(A.one(), N)
    assert first == first.parent.one()
    # the second component is a canonical coset representative, congruent to 1 mod nu_N
    assert not reduce_mod_norm(second - A.one(), N)


@pytest.mark.parametrize("shape", CM_SHAPES)
def test_split_map_is_injective(shape):
    G = FiniteAbelianGroup(*shape)
    for g in G.elements:
        assert split_kernel_dimension(G, G.subgroup([g])) == 0


def test_split_map_negative_control():
    # dropping the second component loses information as soon as N is nontrivial
    G = FiniteAbelianGroup((4,), (2,))
    A = GroupRing(G, QQ)
    N = G.subgroup([(2,)])
    x = A.one() - A.basis((2,))
    first, second = ring_with_N_split(x, N)
    assert not first and second
