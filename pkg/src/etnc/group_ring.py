"""Group rings R[G] for finite abelian G over the coefficient rings of ``rings``."""

from __future__ import annotations

from fractions import Fraction

from .groups import Character, FiniteAbelianGroup, PSplit, QuotientMap, Subgroup
from .linalg import chain_solve, field_solve, field_rank
from .rings import QQ, CyclotomicField, IntegersModPN, UnramifiedRing, cyclotomic_field, unramified_ring

DEFAULT_PRECISION = 40


def _is_padic(R) -> bool:
    return isinstance(R, (IntegersModPN, UnramifiedRing))


class GroupRing:
    def __init__(self, group: FiniteAbelianGroup, ring=QQ):
        self.group = group
        self.ring = ring

    def __repr__(self):
        return f"{self.ring}[{list(self.group.orders)}]"

    def __eq__(self, o):
        return isinstance(o, GroupRing) and o.group == self.group and o.ring == self.ring

    def __hash__(self):
        return hash((self.group, repr(self.ring)))

    def zero(self) -> "GroupRingElement":
        return GroupRingElement(self, {})

    def one(self) -> "GroupRingElement":
        return GroupRingElement(self, {0: self.ring.one})

    def scalar(self, a) -> "GroupRingElement":
        a = self.ring.coerce(a)
        return GroupRingElement(self, {0: a} if a else {})

    def basis(self, g, coeff=None) -> "GroupRingElement":
        c = self.ring.one if coeff is None else self.ring.coerce(coeff)
        return GroupRingElement(self, {self.group.index(self.group.reduce(g)): c} if c else {})

    def from_dict(self, d) -> "GroupRingElement":
        out = {}
        G = self.group
        for g, c in d.items():
            i = G.index(G.reduce(g))
            c = self.ring.coerce(c)
            out[i] = out[i] + c if i in out else c
        return GroupRingElement(self, {i: c for i, c in out.items() if c})

    def from_vector(self, v) -> "GroupRingElement":
        return GroupRingElement(self, {i: c for i, c in enumerate(v) if c})

    def sum_of(self, elements) -> "GroupRingElement":
        out = {}
        one = self.ring.one
        G = self.group
        for g in elements:
            i = G.index(g)
            out[i] = out[i] + one if i in out else one
        return GroupRingElement(self, {i: c for i, c in out.items() if c})

    def norm_element(self, N: Subgroup) -> "GroupRingElement":
        return norm_element(self, N)

    def with_ring(self, ring) -> "GroupRing":
        return GroupRing(self.group, ring)


class GroupRingElement:
    __slots__ = ("parent", "c")

    def __init__(self, parent: GroupRing, coeffs: dict):
        self.parent = parent
        self.c = coeffs

    # -- helpers
    @property
    def group(self):
        return self.parent.group

    @property
    def ring(self):
        return self.parent.ring

    def _check(self, o):
        if not isinstance(o, GroupRingElement):
            return None
        if o.parent.group != self.parent.group:
            raise ValueError("group mismatch")
        if o.parent.ring != self.parent.ring:
            raise ValueError("ring mismatch")
        return o

    def coeff(self, g):
        G = self.group
        return self.c.get(G.index(G.reduce(g)), self.ring.zero)

    def items(self):
        els = self.group.elements
        for i in sorted(self.c):
            yield els[i], self.c[i]

    def vector(self):
        z = self.ring.zero
        return [self.c.get(i, z) for i in range(self.group.order)]

    # -- arithmetic
    def __add__(self, o):
        if not isinstance(o, GroupRingElement):
            o = self.parent.scalar(o)
        self._check(o)
        out = dict(self.c)
        for i, b in o.c.items():
            if i in out:
                s = out[i] + b
                if s:
                    out[i] = s
                else:
                    del out[i]
            else:
                out[i] = b
        return GroupRingElement(self.parent, out)

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElement(self.parent, {i: -a for i, a in self.c.items()})

    def __sub__(self, o):
        if not isinstance(o, GroupRingElement):
            o = self.parent.scalar(o)
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if not isinstance(o, GroupRingElement):
            a = self.ring.coerce(o)
            if not a:
                return self.parent.zero()
            out = {}
            for i, b in self.c.items():
                s = b * a
                if s:
                    out[i] = s
            return GroupRingElement(self.parent, out)
        self._check(o)
        table = self.group.mul_table
        out = {}
        for i, a in self.c.items():
            row = table[i]
            for j, b in o.c.items():
                k = row[j]
                t = a * b
                if k in out:
                    out[k] = out[k] + t
                else:
                    out[k] = t
        return GroupRingElement(self.parent, {k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            inv = try_invert(self)
            if inv is None:
                raise ZeroDivisionError("element is not invertible")
            return inv ** (-k)
        out = self.parent.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, o):
        if isinstance(o, GroupRingElement):
            if o.parent != self.parent:
                return False
            return not (self - o).c
        try:
            return not (self - self.parent.scalar(o)).c
        except (TypeError, ValueError):
            return False

    def __hash__(self):
        return hash(tuple(sorted((i, repr(c)) for i, c in self.c.items())))

    def __bool__(self):
        return bool(self.c)

    def __repr__(self):
        if not self.c:
            return "0"
        return " + ".join(f"({c})*{list(g)}" for g, c in self.items())

    # -- structure
    def augmentation(self):
        s = self.ring.zero
        for c in self.c.values():
            s = s + c
        return s

    def shift(self, g) -> "GroupRingElement":
        """Multiply by the group element g."""
        G = self.group
        j = G.index(G.reduce(g))
        table = G.mul_table
        return GroupRingElement(self.parent, {table[i][j]: c for i, c in self.c.items()})

    def sharp(self) -> "GroupRingElement":
        inv = self.group.inv_table
        return GroupRingElement(self.parent, {inv[i]: c for i, c in self.c.items()})

    def map_coeffs(self, parent: GroupRing, f) -> "GroupRingElement":
        out = {}
        for i, c in self.c.items():
            d = f(c)
            if d:
                out[i] = d
        return GroupRingElement(parent, out)

    def change_ring(self, ring) -> "GroupRingElement":
        return self.map_coeffs(self.parent.with_ring(ring), ring.coerce)

    def project(self, q: QuotientMap) -> "GroupRingElement":
        """Image under R[G] -> R[G/N]."""
        target = GroupRing(q.target, self.ring)
        els = self.group.elements
        T = q.target
        out = {}
        for i, c in self.c.items():
            k = T.index(q(els[i]))
            out[k] = out[k] + c if k in out else c
        return GroupRingElement(target, {k: v for k, v in out.items() if v})

    def evaluate(self, chi: Character, target=None):
        """chi(x) = sum_g x_g chi(g) in Q(zeta_{ord chi}) or a given ring with ``zeta``."""
        if target is None:
            target = cyclotomic_field(chi.order)
        acc = target.zero
        els = self.group.elements
        for i, c in self.c.items():
            acc = acc + chi.value(els[i], target) * target.coerce(c)
        return acc

    def mult_matrix(self):
        """Matrix of y -> x*y on the group basis (columns = images of basis elements)."""
        G = self.group
        n = G.order
        z = self.ring.zero
        M = [[z] * n for _ in range(n)]
        table = G.mul_table
        for j in range(n):
            for i, c in self.c.items():
                M[table[i][j]][j] = c
        return M


# ---------------------------------------------------------------------------
# named operations


def gr_multiply(a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    if a.parent != b.parent:
        raise ValueError("group or ring mismatch")
    return a * b


def minus_projection(x: GroupRingElement) -> GroupRingElement:
    """((1 - c)/2) x."""
    if not getattr(x.ring, "inverts_two", False):
        raise ValueError(f"{x.ring} does not invert 2")
    half = x.ring.coerce(Fraction(1, 2))
    return (x - x.shift(x.group.c)) * half


def plus_projection(x: GroupRingElement) -> GroupRingElement:
    half = x.ring.coerce(Fraction(1, 2))
    return (x + x.shift(x.group.c)) * half


def sharp_involution(x: GroupRingElement) -> GroupRingElement:
    return x.sharp()


def norm_element(parent: GroupRing, N: Subgroup) -> GroupRingElement:
    if N.group != parent.group:
        raise ValueError("subgroup of a different group")
    return parent.sum_of(N.elements)


def character_idempotent(psi: Character, field: CyclotomicField | None = None) -> GroupRingElement:
    """e_psi = (1/#G) sum_g psi(g) g^{-1} over Q(zeta)."""
    G = psi.group
    if field is None:
        field = cyclotomic_field(psi.order)
    parent = GroupRing(G, field)
    inv = Fraction(1, G.order)
    out = {}
    for g in G.elements:
        out[G.index(G.inv(g))] = psi.value(g, field) * inv
    return GroupRingElement(parent, out)


def chi_component(x: GroupRingElement, chi: Character, split: PSplit | None = None, p: int | None = None):
    """Image of x in (O_chi/p^N)[P] where G = G' x P and chi is a character of G'."""
    R = x.ring
    if not isinstance(R, IntegersModPN):
        raise ValueError("chi_component expects coefficients in Z/p^N")
    p = R.p
    if split is None:
        split = x.group.p_split(p)
    if chi.group != split.Gprime:
        raise ValueError("chi must be a character of the prime-to-p part")
    if chi.order % p == 0:
        raise ValueError("p divides the order of chi")
    O = unramified_ring(p, R.N, chi.order)
    target = GroupRing(split.P, O)
    P = split.P
    out = {}
    els = x.group.elements
    for i, c in x.c.items():
        gprime, gp = split.split(els[i])
        k = P.index(gp)
        v = chi.value(gprime, O) * c.v
        out[k] = out[k] + v if k in out else v
    return GroupRingElement(target, {k: v for k, v in out.items() if v})


def try_invert(x: GroupRingElement, unit: GroupRingElement | None = None):
    """y with x*y = unit (default 1), or None when x is not invertible.

    Over a precision ring with G a p-group the ring is local and Newton
    iteration y <- y(2 - x y) converges from the inverse of the
    augmentation; otherwise the linear system x*y = unit is solved.
    """
    parent = x.parent
    R = parent.ring
    one = parent.one() if unit is None else unit
    G = parent.group
    if _is_padic(R) and Subgroup(G, G.generators()).is_p_group(R.p):
        a = x.augmentation()
        if not R.is_unit(a):
            return None
        y = one * R.inverse(a)
        two = one * 2
        # m^k = 0 for k about N*|G|; doubling reaches that quickly
        bound = R.N * max(G.order, 1) * 2
        steps = 0
        while (x * y) != one:
            y = y * (two - x * y)
            steps += 1
            if (1 << steps) > bound:
                return None
        return y
    M = x.mult_matrix()
    b = one.vector()
    if _is_padic(R):
        sol = chain_solve(M, b, R)
    else:
        sol = field_solve(M, b, R.zero, R.one)
    if sol is None:
        return None
    y = parent.from_vector(sol)
    if unit is not None:
        y = y * unit
    if x * y != one:
        return None
    return y


def is_unit(x: GroupRingElement) -> bool:
    return try_invert(x) is not None


def ring_with_N_split(x: GroupRingElement, N: Subgroup):
    """(image in R[G/N], canonical image in R[G]/(nu_N))."""
    q = x.group.quotient(N)
    first = x.project(q)
    return first, reduce_mod_norm(x, N)


def reduce_mod_norm(x: GroupRingElement, N: Subgroup) -> GroupRingElement:
    """Canonical representative of x in R[G]/(nu_N): zero at the least element of each coset."""
    G = x.group
    els = G.elements
    coeffs = dict(x.c)
    Nidx = [G.index(h) for h in N.elements]
    table = G.mul_table
    seen = set()
    for i in range(G.order):
        if i in seen:
            continue
        coset = sorted(table[i][j] for j in Nidx)
        seen.update(coset)
        rep = coset[0]
        a = coeffs.get(rep)
        if a:
            for k in coset:
                v = coeffs.get(k, x.ring.zero) - a
                if v:
                    coeffs[k] = v
                else:
                    coeffs.pop(k, None)
    del els
    return GroupRingElement(x.parent, coeffs)


def split_kernel_dimension(G: FiniteAbelianGroup, N: Subgroup) -> int:
    """dim_Q of the kernel of Q[G] -> Q[G/N] x Q[G]/(nu_N)."""
    parent = GroupRing(G, QQ)
    rows = []
    for g in G.elements:
        first, second = ring_with_N_split(parent.basis(g), N)
        rows.append(first.vector() + second.vector())
    # columns of the map = images of basis vectors; rank of the row list
    return G.order - field_rank(rows, Fraction(1))
