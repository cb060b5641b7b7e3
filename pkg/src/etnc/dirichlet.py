"""Dirichlet characters, generalized Bernoulli numbers and L-values at s = 1 - k."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from .arith import bernoulli_poly, divisors, factorint
from .groups import Character, UnitGroupModM
from .rings import Cyc, cyclotomic_field


@lru_cache(maxsize=None)
def unit_group(m: int) -> UnitGroupModM:
    return UnitGroupModM(m)


class DirichletCharacter:
    """A character of (Z/m)^x given by exponents on the fixed generators of ``unit_group(m)``."""

    def __init__(self, modulus: int, exps):
        self.modulus = modulus
        self.units = unit_group(modulus)
        self.char = Character(self.units.group, exps)
        self.order = self.char.order
        self.field = cyclotomic_field(self.order)

    @classmethod
    def from_group_character(cls, m: int, chi: Character) -> "DirichletCharacter":
        return cls(m, chi.exps)

    @classmethod
    def from_index(cls, m: int, index: int) -> "DirichletCharacter":
        orders = unit_group(m).orders
        total = 1
        for n in orders:
            total *= n
        if not 0 <= index < total:
            raise ValueError(f"character index out of range (0..{total - 1})")
        exps = []
        for n in orders:
            exps.append(index % n)
            index //= n
        return cls(m, exps)

    @classmethod
    def all(cls, m: int) -> list["DirichletCharacter"]:
        return [cls(m, ch.exps) for ch in unit_group(m).group.characters()]

    def __repr__(self):
        return f"DirichletCharacter(mod {self.modulus}, exps={list(self.char.exps)})"

    def __eq__(self, o):
        return isinstance(o, DirichletCharacter) and o.modulus == self.modulus and o.char == self.char

    def __hash__(self):
        return hash((self.modulus, self.char.exps))

    def index(self) -> int:
        return self.char.index()

    def value_exponent(self, a: int):
        """k with chi(a) = zeta_order^k, or None when gcd(a, m) > 1."""
        if gcd(a, self.modulus) != 1:
            return None
        if self.modulus == 1:
            return 0
        return self.char.value_exponent(self.units.log(a))

    def __call__(self, a: int, field=None):
        field = self.field if field is None else field
        k = self.value_exponent(a)
        if k is None:
            return field.zero
        e = field.n if hasattr(field, "n") else field.e
        return field.zeta(k * (e // self.order))

    def parity(self) -> int:
        return 1 if self.modulus <= 2 or self.value_exponent(-1) == 0 else -1

    def is_odd(self) -> bool:
        return self.parity() == -1

    def is_trivial(self) -> bool:
        return self.order == 1

    def conjugate(self) -> "DirichletCharacter":
        return DirichletCharacter(self.modulus, self.char.inverse().exps)

    def conductor(self) -> int:
        m = self.modulus
        for f in divisors(m):
            ok = True
            for a in range(1, m, f):
                if gcd(a, m) == 1 and self.value_exponent(a) != 0:
                    ok = False
                    break
            if ok:
                return f
        return m

    def primitive(self) -> "DirichletCharacter":
        """The primitive character of conductor f inducing self."""
        f = self.conductor()
        if f == self.modulus:
            return self
        U = unit_group(f)
        exps = []
        for gen, n in zip(U.gens, U.orders):
            a = gen
            while gcd(a, self.modulus) != 1:
                a += f
            k = self.value_exponent(a)
            exps.append(k * n // self.order)
        out = DirichletCharacter(f, exps)
        return out

    def induce(self, m: int) -> "DirichletCharacter":
        """The character mod m (a multiple of the modulus) induced by self."""
        if m % self.modulus:
            raise ValueError("new modulus must be a multiple")
        U = unit_group(m)
        exps = []
        for gen, n in zip(U.gens, U.orders):
            k = self.value_exponent(gen % self.modulus if self.modulus > 1 else 0)
            exps.append(k * n // self.order if self.order > 1 else 0)
        return DirichletCharacter(m, exps)


def generalized_bernoulli(psi: DirichletCharacter, k: int) -> Cyc:
    """B_{k,psi} = f^{k-1} sum_{a=1}^{f} psi(a) B_k(a/f) for psi of conductor f (primitive)."""
    if k < 1:
        raise ValueError("k must be at least 1")
    f = psi.modulus
    F = psi.field
    acc = F.zero
    for a in range(1, f + 1):
        ex = psi.value_exponent(a % f if f > 1 else 0)
        if ex is None:
            continue
        acc = acc + F.zeta(ex) * bernoulli_poly(k, Fraction(a, f))
    return acc * Fraction(f) ** (k - 1)


def _prime_list(xs):
    out = []
    for x in xs or ():
        x = int(x)
        if factorint(x) != {x: 1}:
            raise ValueError(f"{x} is not prime")
        out.append(x)
    return out


def l_value(psi: DirichletCharacter, k: int = 1, deplete=(), smooth=()) -> Cyc:
    """L(psi, 1-k) with Euler factors removed at `deplete` and smoothed at `smooth`.

    Depletion at l multiplies by (1 - psi(l) l^{k-1}); smoothing at l by
    (1 - psi(l) l^k), which is (1 - l psi(l)) at k = 1.  psi(l) means the
    primitive character's value, so primes dividing the conductor give 1.
    """
    prim = psi.primitive()
    F = psi.field
    val = -generalized_bernoulli(prim, k) * Fraction(1, k)
    val = F.coerce(val) if val.field.n != F.n else val
    for l in _prime_list(deplete):
        val = val * (F.one - prim(l, F) * (l ** (k - 1)))
    for l in _prime_list(smooth):
        val = val * (F.one - prim(l, F) * (l**k))
    return val


def minus_class_number(p: int) -> int:
    """h^-(Q(zeta_p)) = 2p prod_{psi odd mod p} (-B_{1,psi}/2)."""
    if p == 2 or factorint(p) != {p: 1}:
        raise ValueError("expects an odd prime")
    F = cyclotomic_field(p - 1)
    acc = F.from_rational(2 * p)
    for psi in DirichletCharacter.all(p):
        if psi.is_odd():
            acc = acc * F.coerce(-generalized_bernoulli(psi, 1) * Fraction(1, 2))
    if not acc.is_rational():
        raise ArithmeticError("minus class number product is not rational")
    h = acc.to_rational()
    if h.denominator != 1:
        raise ArithmeticError(f"minus class number product {h} is not an integer")
    return int(h)
