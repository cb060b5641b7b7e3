"""Finite abelian groups, subgroups, quotients and characters.

Elements are tuples of residues modulo the cyclic orders.  Internally group
rings index elements by their position in ``FiniteAbelianGroup.elements``
(mixed radix, first coordinate fastest).
"""

from __future__ import annotations

import itertools
from functools import cached_property
from math import gcd, prod

from .arith import crt, factorint, lcm, primitive_root, smith_normal_form


class FiniteAbelianGroup:
    def __init__(self, orders, c=None):
        orders = tuple(int(n) for n in orders)
        if any(n < 1 for n in orders):
            raise ValueError("cyclic orders must be positive")
        self.orders = orders
        self.rank = len(orders)
        self.order = prod(orders)
        self.identity = (0,) * self.rank
        if c is None:
            c = self.identity
        c = self.reduce(c)
        if self.mul(c, c) != self.identity:
            raise ValueError("c must have order dividing 2")
        self.c = c

    def __repr__(self):
        return f"FiniteAbelianGroup({list(self.orders)}, c={list(self.c)})"

    def __eq__(self, o):
        return isinstance(o, FiniteAbelianGroup) and o.orders == self.orders and o.c == self.c

    def __hash__(self):
        return hash((self.orders, self.c))

    def to_json(self):
        return {"cyclic_orders": list(self.orders), "c": list(self.c)}

    @classmethod
    def from_json(cls, d):
        return cls(d["cyclic_orders"], d.get("c"))

    # -- element arithmetic
    def reduce(self, g):
        g = tuple(g)
        if len(g) != self.rank:
            raise ValueError("element has the wrong length")
        return tuple(x % n for x, n in zip(g, self.orders))

    def mul(self, a, b):
        return tuple((x + y) % n for x, y, n in zip(a, b, self.orders))

    def inv(self, a):
        return tuple(-x % n for x, n in zip(a, self.orders))

    def pow(self, a, k):
        return tuple(x * k % n for x, n in zip(a, self.orders))

    def element_order(self, a) -> int:
        return lcm(*(n // gcd(n, x) for x, n in zip(a, self.orders))) if self.rank else 1

    def generators(self):
        out = []
        for i, n in enumerate(self.orders):
            g = [0] * self.rank
            g[i] = 1 % n
            out.append(tuple(g))
        return out

    @cached_property
    def elements(self) -> list[tuple]:
        out = []
        for rev in itertools.product(*(range(n) for n in reversed(self.orders))):
            out.append(tuple(reversed(rev)))
        return out

    def index(self, g) -> int:
        i = 0
        for x, n in zip(reversed(g), reversed(self.orders)):
            i = i * n + x % n
        return i

    @cached_property
    def _strides(self):
        s, out = 1, []
        for n in self.orders:
            out.append(s)
            s *= n
        return out

    @cached_property
    def mul_table(self):
        """mul_table[i][j] = index of elements[i]*elements[j]."""
        els = self.elements
        idx = self.index
        return [[idx(self.mul(a, b)) for b in els] for a in els]

    @cached_property
    def inv_table(self):
        return [self.index(self.inv(a)) for a in self.elements]

    @property
    def exponent(self) -> int:
        return lcm(*self.orders) if self.rank else 1

    # -- subgroups and quotients
    def subgroup(self, gens) -> "Subgroup":
        return Subgroup(self, gens)

    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, [])

    def whole(self) -> "Subgroup":
        return Subgroup(self, self.generators())

    def quotient(self, N: "Subgroup") -> "QuotientMap":
        return QuotientMap(self, N)

    def characters(self) -> list["Character"]:
        return [Character(self, exps) for exps in itertools.product(*(range(n) for n in self.orders))]

    def odd_characters(self) -> list["Character"]:
        return [ch for ch in self.characters() if ch.is_odd()]

    def p_split(self, p: int) -> "PSplit":
        return PSplit(self, p)


class Subgroup:
    """A subgroup given by generators, canonicalized by its element set."""

    def __init__(self, group: FiniteAbelianGroup, gens):
        self.group = group
        gens = [group.reduce(g) for g in gens]
        self.gens = [g for g in gens if g != group.identity]
        seen = {group.identity}
        frontier = [group.identity]
        while frontier:
            new = []
            for a in frontier:
                for g in self.gens:
                    b = group.mul(a, g)
                    if b not in seen:
                        seen.add(b)
                        new.append(b)
            frontier = new
        self.elements = frozenset(seen)
        self.order = len(seen)

    def __contains__(self, g):
        return tuple(g) in self.elements

    def __eq__(self, o):
        return isinstance(o, Subgroup) and o.group == self.group and o.elements == self.elements

    def __hash__(self):
        return hash(self.elements)

    def __le__(self, o):
        return self.elements <= o.elements

    def __repr__(self):
        return f"Subgroup(order={self.order}, gens={self.gens})"

    def sorted_elements(self):
        return sorted(self.elements, key=self.group.index)

    def join(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.group, self.gens + other.gens)

    def intersect(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.group, [g for g in self.elements if g in other.elements])

    def is_p_group(self, p: int) -> bool:
        return set(factorint(self.order)) <= {p}


class QuotientMap:
    """G -> G/N, with G/N presented in Smith form."""

    def __init__(self, G: FiniteAbelianGroup, N: Subgroup):
        self.source = G
        self.kernel = N
        r = G.rank
        cols = []
        for i, n in enumerate(G.orders):
            col = [0] * r
            col[i] = n
            cols.append(col)
        cols += [list(g) for g in N.gens]
        if r == 0:
            self.rows, self._U, orders = [], [], []
        else:
            A = [[col[i] for col in cols] for i in range(r)]
            U, D, _ = smith_normal_form(A)
            diag = [D[i][i] for i in range(r)]
            self.rows = [i for i, d in enumerate(diag) if d != 1]
            self._U = U
            orders = [diag[i] for i in self.rows]
        self._orders = orders
        imgc = self._image(G.c)
        self.target = FiniteAbelianGroup(orders, imgc)
        assert self.target.order * N.order == G.order

    def _image(self, g):
        return tuple(sum(u * x for u, x in zip(self._U[i], g)) % self._orders[k] for k, i in enumerate(self.rows))

    def __call__(self, g):
        return self._image(g)

    def image_subgroup(self, S: Subgroup) -> Subgroup:
        return Subgroup(self.target, [self(g) for g in S.gens])

    def preimage(self, S: Subgroup) -> Subgroup:
        return Subgroup(self.source, list(self.kernel.gens) + [self.lift(h) for h in S.gens])

    def lift(self, h):
        """Some preimage of h."""
        if not hasattr(self, "_lift_table"):
            table = {}
            for g in self.source.elements:
                table.setdefault(self(g), g)
            self._lift_table = table
        return self._lift_table[tuple(h)]


class PSplit:
    """G = G' x P with G' of order prime to p and P the p-Sylow subgroup.

    Each cyclic factor Z/n with n = n' p^a is split by CRT into Z/n' x Z/p^a.
    """

    def __init__(self, G: FiniteAbelianGroup, p: int):
        self.group = G
        self.p = p
        self.prime_to_p = []
        self.p_part = []
        for n in G.orders:
            a = 0
            while n % p == 0:
                n //= p
                a += 1
            self.prime_to_p.append(n)
            self.p_part.append(p**a)
        cprime = tuple(x % n for x, n in zip(G.c, self.prime_to_p))
        cp = tuple(x % n for x, n in zip(G.c, self.p_part))
        assert all(x == 0 for x in cp)  # c has order 2, p odd
        self.Gprime = FiniteAbelianGroup(self.prime_to_p, cprime)
        self.P = FiniteAbelianGroup(self.p_part)

    def split(self, g):
        return (
            tuple(x % n for x, n in zip(g, self.prime_to_p)),
            tuple(x % n for x, n in zip(g, self.p_part)),
        )

    def join(self, gprime, gp):
        return tuple(
            crt([a, b], [n1, n2]) if n1 > 1 or n2 > 1 else 0
            for a, b, n1, n2 in zip(gprime, gp, self.prime_to_p, self.p_part)
        )

    def embed_p(self, gp):
        return self.join(self.Gprime.identity, gp)

    def embed_prime(self, gprime):
        return self.join(gprime, self.P.identity)


class Character:
    """A character given by exponents: chi(g_i) = exp(2 pi i a_i / n_i)."""

    def __init__(self, group: FiniteAbelianGroup, exps):
        self.group = group
        self.exps = tuple(int(a) % n for a, n in zip(exps, group.orders))
        if len(self.exps) != group.rank:
            raise ValueError("wrong number of exponents")
        E = group.exponent
        # value at generator i is zeta_E^{a_i E / n_i}; reduce to the true order
        raw = [a * (E // n) for a, n in zip(self.exps, group.orders)]
        g = E
        for r in raw:
            g = gcd(g, r)
        self.order = E // g if raw and any(raw) else 1
        self._gen_exps = tuple((r // (E // self.order)) % self.order for r in raw) if self.order > 1 else (0,) * group.rank

    def __repr__(self):
        return f"Character({list(self.exps)}, order={self.order})"

    def __eq__(self, o):
        return isinstance(o, Character) and o.group == self.group and o.exps == self.exps

    def __hash__(self):
        return hash((self.group, self.exps))

    def value_exponent(self, g) -> int:
        """k with chi(g) = zeta_order^k."""
        return sum(a * x for a, x in zip(self._gen_exps, g)) % self.order

    def value(self, g, field=None):
        """chi(g) in Q(zeta_e) (default e = order) or any ring with ``zeta``."""
        from .rings import cyclotomic_field

        if field is None:
            field = cyclotomic_field(self.order)
        e = field.n if hasattr(field, "n") else field.e
        if e % self.order:
            raise ValueError("target ring lacks the needed roots of unity")
        return field.zeta(self.value_exponent(g) * (e // self.order))

    def is_trivial(self) -> bool:
        return self.order == 1

    def is_odd(self) -> bool:
        v = self.value_exponent(self.group.c)
        return self.order % 2 == 0 and v == self.order // 2

    def is_trivial_on(self, S: Subgroup) -> bool:
        return all(self.value_exponent(g) == 0 for g in S.gens)

    def inverse(self) -> "Character":
        return Character(self.group, [-a for a in self.exps])

    def __mul__(self, o: "Character") -> "Character":
        return Character(self.group, [a + b for a, b in zip(self.exps, o.exps)])

    def power(self, k: int) -> "Character":
        return Character(self.group, [a * k for a in self.exps])

    def kernel(self) -> Subgroup:
        return Subgroup(self.group, [g for g in self.group.elements if self.value_exponent(g) == 0])

    def factors_through(self, q: QuotientMap) -> "Character":
        """The character of q.target inducing self (self must kill q.kernel)."""
        if not self.is_trivial_on(q.kernel):
            raise ValueError("character is not trivial on the kernel")
        T = q.target
        exps = []
        for i, n in enumerate(T.orders):
            h = [0] * T.rank
            h[i] = 1
            g = q.lift(tuple(h))
            k = self.value_exponent(g)
            # chi(g) = zeta_ord^k ; as exponent on Z/n: k * n / ord
            exps.append(k * n // self.order if self.order > 1 else 0)
        out = Character(T, exps)
        return out

    def index(self) -> int:
        i = 0
        for a, n in zip(reversed(self.exps), reversed(self.group.orders)):
            i = i * n + a
        return i


# ---------------------------------------------------------------------------
# Gal(Q(zeta_m)/Q) = (Z/m)^x


class UnitGroupModM:
    """(Z/m)^x on a fixed generator basis, with discrete logs.

    Odd prime powers use the least primitive root; 4 uses -1; 2^e (e >= 3)
    uses -1 and 5.  Generators are lifted by CRT to be 1 at the other
    prime powers.  ``group`` is the abstract group with c = log(-1).
    """

    def __init__(self, m: int):
        if m < 1:
            raise ValueError("modulus must be positive")
        self.m = m
        fac = factorint(m) if m > 1 else {}
        gens, orders, parts = [], [], []
        for q, e in sorted(fac.items()):
            qe = q**e
            others = m // qe
            if q == 2:
                if e == 1:
                    continue
                local = [(qe - 1, 2)] + ([(5, 2 ** (e - 2))] if e >= 3 else [])
            else:
                local = [(primitive_root(qe), qe // q * (q - 1))]
            for g, n in local:
                G = crt([g, 1], [qe, others]) if others > 1 else g % qe
                gens.append(G)
                orders.append(n)
                parts.append(qe)
        self.gens = gens
        self.orders = orders
        self._parts = parts
        self._log = {}
        for exps in itertools.product(*(range(n) for n in orders)):
            a = 1
            for g, k in zip(gens, exps):
                a = a * pow(g, k, m) % m
            self._log[a] = exps
        if m <= 2:
            self._log = {1 % m: ()}
        self.group = FiniteAbelianGroup(orders, self.log(-1))

    def log(self, a: int):
        a %= self.m
        if a not in self._log:
            raise ValueError(f"{a} is not a unit mod {self.m}")
        return self._log[a]

    def exp(self, g) -> int:
        a = 1
        for gen, k in zip(self.gens, g):
            a = a * pow(gen, k, self.m) % self.m
        return a % self.m if self.m > 1 else 0

    def units(self):
        return sorted(self._log)

    def subgroup_of_units(self, units) -> Subgroup:
        return self.group.subgroup([self.log(u) for u in units])
