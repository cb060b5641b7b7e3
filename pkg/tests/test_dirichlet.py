from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from etnc.dirichlet import DirichletCharacter, generalized_bernoulli, l_value, minus_class_number
from etnc.verify import power_sum_bernoulli

# classical relative class numbers of Q(zeta_p), p < 100
H_MINUS = {3: 1, 5: 1, 7: 1, 11: 1, 13: 1, 17: 1, 19: 1, 23: 3, 29: 8, 31: 9, 37: 37, 41: 121, 43: 211,
           47: 695, 53: 4889, 59: 41241, 61: 76301, 67: 853513, 71: 3882809, 73: 11957417, 79: 100146415,
           83: 838216959, 89: 13379363737, 97: 411322824001}


def odd_quadratic(m):
    return next(psi for psi in DirichletCharacter.all(m) if psi.is_odd())


def primitive(f):
    return [psi for psi in DirichletCharacter.all(f) if psi.conductor() == f]


def test_bernoulli_golden_values():
    assert generalized_bernoulli(odd_quadratic(4), 1).to_rational() == Fraction(-1, 2)
    assert generalized_bernoulli(odd_quadratic(3), 1).to_rational() == Fraction(-1, 3)
    triv = DirichletCharacter.all(1)[0]
    assert generalized_bernoulli(triv, 2).to_rational() == Fraction(1, 6)


@pytest.mark.parametrize("k", range(2, 13))
def test_trivial_character_matches_sympy_bernoulli(k):
    triv = DirichletCharacter.all(1)[0]
    assert generalized_bernoulli(triv, k).to_rational() == Fraction(str(sympy.bernoulli(k)))


def test_zeta_minus_one():
    triv = DirichletCharacter.all(1)[0]
    assert l_value(triv, 2).to_rational() == Fraction(-1, 12)


def test_l_value_examples():
    assert l_value(odd_quadratic(4)).to_rational() == Fraction(1, 2)
    assert l_value(odd_quadratic(3)).to_rational() == Fraction(1, 3)
    assert l_value(odd_quadratic(3), smooth=[5]).to_rational() == 2
    even = next(psi for psi in DirichletCharacter.all(5) if not psi.is_odd() and not psi.is_trivial())
    assert not l_value(even)


def test_depletion_factor():
    # removing the Euler factor at 2 from L(chi_-3, 0): (1 - chi(2)) * 1/3 = 2/3
    assert l_value(odd_quadratic(3), deplete=[2]).to_rational() == Fraction(2, 3)
    # a prime dividing the conductor changes nothing
    assert l_value(odd_quadratic(3), deplete=[3]).to_rational() == Fraction(1, 3)


def test_character_vanishes_off_units():
    for psi in DirichletCharacter.all(12):
        assert psi(2) == 0 and psi(3) == 0 and psi(6) == 0
        assert psi(1) == 1


def test_parity_is_value_at_minus_one():
    for m in (5, 7, 8, 12, 15):
        for psi in DirichletCharacter.all(m):
            assert psi(m - 1) == psi.parity()


@pytest.mark.parametrize("f", range(1, 41))
def test_parity_vanishing(f):
    for psi in primitive(f):
        for k in range(1, 7):
            if psi.is_trivial() and k == 1:
                continue  # B_1 = 1/2 is the classical exception
            if psi.parity() != (-1) ** k:
                assert not generalized_bernoulli(psi, k)


@pytest.mark.parametrize("m", range(1, 41))
def test_primitive_character_induces_back(m):
    for chi in DirichletCharacter.all(m):
        prim = chi.primitive()
        assert prim.conductor() == prim.modulus
        ind = prim.induce(m)
        assert all(ind(a) == chi(a) for a in range(m))


def test_odd_values_nonzero_up_to_conductor_100():
    for f in range(1, 101):
        for psi in primitive(f):
            if psi.is_odd():
                assert l_value(psi)


@given(st.sampled_from([f for f in range(1, 41) if f % 4 != 2]), st.data())
def test_bernoulli_against_power_sums(f, data):
    psi = data.draw(st.sampled_from(primitive(f)))
    B = power_sum_bernoulli(psi, 5)
    for k in range(1, 6):
        assert B[k] == generalized_bernoulli(psi, k)


def test_minus_class_numbers():
    for p, h in H_MINUS.items():
        assert minus_class_number(p) == h


def test_minus_class_number_rejects_composites():
    with pytest.raises(ValueError):
        minus_class_number(15)
