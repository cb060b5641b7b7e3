"""Presented modules over (O/p^N)[G], their Fitting ideals and orders, and Fitting ideals of maps.

Conventions: a module is the cokernel of R^m -> R^n given by an n x m
matrix (generators are rows, relations are columns).  R is a ``GroupRing``
over a chain ring O = Z/p^N or O_chi/p^N; a bare chain ring is treated as
the group ring of the trivial group.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .group_ring import GroupRing, GroupRingElement, chi_component
from .groups import FiniteAbelianGroup
from .linalg import ChainSNF, det, mat_mul, mat_vec
from .rings import IntegersModPN, PrecisionError, UnramifiedRing, cyclotomic_poly, integers_mod, unramified_ring

DEFAULT_SLACK = 5
_TRIVIAL = FiniteAbelianGroup([])


def as_group_ring(ring) -> GroupRing:
    if isinstance(ring, GroupRing):
        base = ring.ring
    else:
        base = ring
        ring = GroupRing(_TRIVIAL, ring)
    if not isinstance(base, (IntegersModPN, UnramifiedRing)):
        raise ValueError("coefficients must be Z/p^N or O_chi/p^N")
    return ring


def make_ring(p: int, N: int, group=(), chi_order: int = 1) -> GroupRing:
    base = integers_mod(p, N) if chi_order == 1 else unramified_ring(p, N, chi_order)
    return GroupRing(FiniteAbelianGroup(list(group)), base)


def _elt(R: GroupRing, x) -> GroupRingElement:
    if isinstance(x, GroupRingElement):
        if x.parent != R:
            raise ValueError("entry lives in a different ring")
        return x
    return R.scalar(x)


def _coords(O, x) -> list[int]:
    return [x.v] if isinstance(O, IntegersModPN) else list(x.c)


def block_matrix(M, R: GroupRing):
    """The O-matrix of an R-matrix: each entry becomes its |G| x |G| multiplication matrix."""
    k = R.group.order
    n = len(M)
    m = len(M[0]) if n else 0
    z = R.ring.zero
    out = [[z] * (m * k) for _ in range(n * k)]
    for i in range(n):
        for j in range(m):
            B = M[i][j].mult_matrix()
            for a in range(k):
                row = out[i * k + a]
                Ba = B[a]
                for b in range(k):
                    row[j * k + b] = Ba[b]
    return out


# ---------------------------------------------------------------------------
# Smith reduction over chain rings


def smith_reduce(M, R) -> tuple[list[int], bool]:
    """Valuations of the Smith diagonal of M over Z/p^N or O/p^N, and the precision-loss flag."""
    if isinstance(R, GroupRing):
        if R.group.order != 1:
            raise ValueError("smith_reduce needs a chain ring")
        R = R.ring
        M = [[x.coeff(()) for x in row] for row in M]
    M = [[R.coerce(x) for x in row] for row in M]
    S = ChainSNF(M, R)
    return list(S.invariants), S.precision_loss


# ---------------------------------------------------------------------------
# components: (chi-orbit of G', Galois class psi of characters of P)


def _galois_orbits(G, p):
    seen = set()
    out = []
    for ch in G.characters():
        if ch in seen:
            continue
        orbit = []
        c = ch
        while c not in orbit:
            orbit.append(c)
            c = c.power(p)
        seen.update(orbit)
        out.append(ch)
    return out


def psi_classes(P: FiniteAbelianGroup):
    """One character of P per Galois class (characters sharing a kernel)."""
    reps = {}
    for ch in P.characters():
        key = frozenset(ch.kernel().elements)
        reps.setdefault(key, ch)
    return list(reps.values())


def _poly_reduce(c, phi, zero):
    """Reduce a coefficient list modulo the monic integer polynomial phi (low degree first)."""
    d = len(phi) - 1
    c = list(c)
    for k in range(len(c) - 1, d - 1, -1):
        t = c[k]
        if t:
            for i in range(d):
                if phi[i]:
                    c[k - d + i] = c[k - d + i] - t * phi[i]
            c[k] = zero
    return c[:d] + [zero] * (d - len(c[:d]))


def psi_value(x: GroupRingElement, psi) -> list:
    """psi(x) in O[y]/Phi_{ord psi}(y) as a coefficient list over O (y = the root of unity psi takes)."""
    O = x.ring
    ordv = psi.order
    acc = [O.zero] * ordv
    els = x.group.elements
    for i, c in x.c.items():
        k = psi.value_exponent(els[i]) if ordv > 1 else 0
        acc[k] = acc[k] + c
    return _poly_reduce(acc, cyclotomic_poly(ordv), O.zero)


def psi_mult_matrix(vec, ordv, O):
    """Matrix over O of multiplication by vec on O[y]/Phi(y)."""
    phi = cyclotomic_poly(ordv)
    d = len(phi) - 1
    cols = []
    cur = list(vec)
    for _ in range(d):
        cols.append(cur)
        cur = _poly_reduce([O.zero] + cur, phi, O.zero)
    return [[cols[j][i] for j in range(d)] for i in range(d)]


def component_lengths(x: GroupRingElement) -> list[dict]:
    """For each component O_psi of R: the Smith valuations of multiplication by psi(x) over O.

    #(O_psi / psi(x)) = p^(f * sum of valuations), f the residue degree of O.
    """
    R = x.parent
    O = R.ring
    out = []
    if isinstance(O, IntegersModPN):
        split = R.group.p_split(O.p)
        for chi in _galois_orbits(split.Gprime, O.p):
            xc = chi_component(x, chi, split)
            for psi in psi_classes(split.P):
                S = ChainSNF(psi_mult_matrix(psi_value(xc, psi), psi.order, xc.ring), xc.ring)
                out.append({"chi": list(chi.exps), "psi": list(psi.exps), "f": xc.ring.residue_degree,
                            "invariants": S.invariants, "loss": S.precision_loss})
    else:
        if any(n % O.p for n in R.group.orders):
            raise ValueError("over O_chi the group must be a p-group")
        for psi in psi_classes(R.group):
            S = ChainSNF(psi_mult_matrix(psi_value(x, psi), psi.order, O), O)
            out.append({"chi": None, "psi": list(psi.exps), "f": O.residue_degree,
                        "invariants": S.invariants, "loss": S.precision_loss})
    return out


def nzd_margin(x: GroupRingElement) -> int:
    """N minus the largest Smith valuation of multiplication by x; <= 0 means not visibly a non-zero-divisor."""
    O = x.ring
    S = ChainSNF(x.mult_matrix(), O)
    if S.precision_loss:
        return 0
    return O.N - max(S.invariants, default=0)


def is_nonzerodivisor(x: GroupRingElement) -> bool:
    return all(not c["loss"] for c in component_lengths(x))


# ---------------------------------------------------------------------------
# presented modules


class PresentedModule:
    def __init__(self, ring, matrix, rows: int | None = None, check_pd1: bool = False):
        R = as_group_ring(ring)
        self.ring = R
        self.matrix = [[_elt(R, x) for x in row] for row in matrix]
        self.rows = len(self.matrix) if rows is None else rows
        if rows is not None and self.matrix and len(self.matrix) != rows:
            raise ValueError("row count mismatch")
        self.cols = len(self.matrix[0]) if self.matrix else 0
        if any(len(r) != self.cols for r in self.matrix):
            raise ValueError("ragged matrix")
        if not self.matrix:
            self.matrix = [[] for _ in range(self.rows)]
        if check_pd1:
            if self.rows != self.cols:
                raise ValueError("a finite pd <= 1 presentation must be square")
            d = self.determinant()
            bad = [c for c in component_lengths(d) if c["loss"]]
            if bad:
                raise ValueError(f"determinant is a zero divisor in components {bad}")

    def __repr__(self):
        return f"PresentedModule({self.rows}x{self.cols} over {self.ring})"

    @property
    def p(self):
        return self.ring.ring.p

    @property
    def precision(self):
        return self.ring.ring.N

    def determinant(self) -> GroupRingElement:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square presentation")
        R = self.ring
        return det(self.matrix, R.zero(), R.one())

    def direct_sum(self, other: "PresentedModule") -> "PresentedModule":
        z = self.ring.zero()
        top = [row + [z] * other.cols for row in self.matrix]
        bot = [[z] * self.cols + row for row in other.matrix]
        return PresentedModule(self.ring, top + bot, rows=self.rows + other.rows)

    def to_json(self) -> dict:
        R = self.ring
        O = R.ring
        ring = {"p": O.p, "N": O.N, "group": list(R.group.orders),
                "chi_order": O.e if isinstance(O, UnramifiedRing) else 1}
        ents = [[[(_coords(O, c) if isinstance(O, UnramifiedRing) else c.v) for c in x.vector()] for x in row]
                for row in self.matrix]
        return {"ring": ring, "rows": self.rows, "cols": self.cols, "entries": _stringify(ents)}

    @classmethod
    def from_json(cls, d) -> "PresentedModule":
        r = d["ring"]
        R = make_ring(int(r["p"]), int(r.get("N", 40)), r.get("group", []), int(r.get("chi_order", 1)))
        O = R.ring
        ents = d["entries"]
        mat = []
        for row in ents:
            out = []
            for x in row:
                out.append(_parse_entry(R, O, x))
            mat.append(out)
        if len(mat) != int(d.get("rows", len(mat))):
            raise ValueError("rows does not match entries")
        if mat and len(mat[0]) != int(d.get("cols", len(mat[0]))):
            raise ValueError("cols does not match entries")
        return cls(R, mat, rows=int(d.get("rows", len(mat))))


def _stringify(x):
    if isinstance(x, list):
        return [_stringify(y) for y in x]
    return str(x)


def _parse_coeff(O, c):
    if isinstance(c, list):
        if not isinstance(O, UnramifiedRing):
            raise ValueError("list coefficient over Z/p^N")
        vals = [int(t) % O.modulus for t in c] + [0] * (O.degree - len(c))
        from .rings import UElem

        return UElem(O, tuple(vals[: O.degree]))
    return O.coerce(int(c))


def _parse_entry(R, O, x):
    if isinstance(x, list):
        if len(x) != R.group.order:
            raise ValueError("group-ring entry has the wrong length")
        return R.from_vector([_parse_coeff(O, c) for c in x])
    return R.scalar(_parse_coeff(O, x))


# ---------------------------------------------------------------------------
# Fitting ideals


@dataclass
class FittingIdeal:
    ring: GroupRing
    generators: list
    principal: GroupRingElement | None = None
    valuation: int | None = None  # chain-ring case: the ideal is p^valuation

    def is_zero(self) -> bool:
        return all(not g for g in self.generators)


def fitting_ideal(mod: PresentedModule) -> FittingIdeal:
    R = mod.ring
    n, m = mod.rows, mod.cols
    if m < n:
        return FittingIdeal(R, [R.zero()], R.zero())
    if n == 0:
        return FittingIdeal(R, [R.one()], R.one(), 0)
    if R.group.order == 1:
        invs, loss = smith_reduce([[x.coeff(()) for x in row] for row in mod.matrix], R.ring)
        v = sum(invs[:n])
        gen = R.scalar(R.ring.p_power(v)) if not loss and v < R.ring.N else R.zero()
        return FittingIdeal(R, [gen], gen, None if loss else v)
    if m == n:
        d = mod.determinant()
        return FittingIdeal(R, [d], d)
    gens = []
    for cols in itertools.combinations(range(m), n):
        sub = [[row[j] for j in cols] for row in mod.matrix]
        gens.append(det(sub, R.zero(), R.one()))
    return FittingIdeal(R, gens, None)


# ---------------------------------------------------------------------------
# orders


@dataclass
class OrderReport:
    p: int
    log_p: int
    route_block: int
    route_components: int | None
    margin: int
    certified: bool
    components: list = field(default_factory=list)

    @property
    def order(self) -> int:
        return self.p**self.log_p


def module_order_report(mod: PresentedModule, slack: int = DEFAULT_SLACK) -> OrderReport:
    """#mod by two routes: Smith form of the full O-block matrix, and the product over components."""
    R = mod.ring
    O = R.ring
    f = O.residue_degree
    k = R.group.order
    if mod.cols < mod.rows:
        raise PrecisionError("module is infinite (fewer relations than generators)")
    S = ChainSNF(block_matrix(mod.matrix, R), O)
    if S.precision_loss:
        raise PrecisionError("order exceeds the precision p^N (or the module is infinite)")
    route_a = f * sum(S.invariants[: mod.rows * k])
    margin = O.N - max(S.invariants, default=0)
    route_b = None
    comps = []
    if mod.rows == mod.cols:
        comps = component_lengths(mod.determinant())
        if any(c["loss"] for c in comps):
            raise PrecisionError("determinant vanishes in a component at this precision")
        route_b = sum(c["f"] * sum(c["invariants"]) for c in comps)
        for c in comps:
            margin = min(margin, O.N - max(c["invariants"], default=0))
    return OrderReport(O.p, route_a, route_a, route_b, margin, margin >= slack, comps)


def module_order(mod: PresentedModule, slack: int = DEFAULT_SLACK) -> int:
    rep = module_order_report(mod, slack)
    if rep.route_components is not None and rep.route_components != rep.route_block:
        raise ArithmeticError(f"component product p^{rep.route_components} != block order p^{rep.route_block}")
    return rep.order


def brute_force_order(mod: PresentedModule, limit: int = 3**12) -> int:
    """#coker by enumerating the image subgroup of R^m in R^n (R taken literally as the finite ring O[G]/p^N)."""
    R = mod.ring
    O = R.ring
    q = O.modulus
    k = R.group.order
    d = 1 if isinstance(O, IntegersModPN) else O.degree
    dim = mod.rows * k * d
    if q**dim > limit:
        raise ValueError("ring too large for enumeration")
    gens = []
    basis_O = [O.one] if d == 1 else [O.zeta(0) * 0 + _unit_vec(O, i) for i in range(d)]
    for j in range(mod.cols):
        for g in R.group.elements:
            for b in basis_O:
                vec = []
                for i in range(mod.rows):
                    x = mod.matrix[i][j] * R.basis(g, b)
                    for c in x.vector():
                        vec.extend(_coords(O, c))
                gens.append(tuple(vec))
    span = {(0,) * dim}
    for v in gens:
        if v in span:
            continue
        new = set(span)
        step = v
        while step not in span:
            new.update(tuple((a + b) % q for a, b in zip(s, step)) for s in span)
            step = tuple((a + b) % q for a, b in zip(step, v))
        span = new
        # closure: span is a group once all multiples were added against the old span
        frontier = True
        while frontier:
            frontier = False
            for s in list(span):
                t = tuple((a + b) % q for a, b in zip(s, v))
                if t not in span:
                    span.add(t)
                    frontier = True
    total = q**dim
    assert total % len(span) == 0
    return total // len(span)


def _unit_vec(O, i):
    from .rings import UElem

    c = [0] * O.degree
    c[i] = 1
    return UElem(O, tuple(c))


# ---------------------------------------------------------------------------
# principal fractional ideals


def _divides(x: GroupRingElement, y: GroupRingElement):
    from .linalg import chain_solve

    return chain_solve(x.mult_matrix(), y.vector(), x.ring) is not None


class PrincipalFractionalIdeal:
    """The fractional ideal (numerator / denominator) with both non-zero-divisors."""

    def __init__(self, numerator: GroupRingElement, denominator: GroupRingElement | None = None, check: bool = True):
        R = numerator.parent
        self.ring = R
        self.numerator = numerator
        self.denominator = R.one() if denominator is None else denominator
        if check:
            if nzd_margin(self.denominator) <= 0:
                raise ValueError("denominator is not a non-zero-divisor at this precision")
            if nzd_margin(self.numerator) <= 0:
                raise ValueError("numerator is not a non-zero-divisor at this precision")

    def __mul__(self, o: "PrincipalFractionalIdeal") -> "PrincipalFractionalIdeal":
        return PrincipalFractionalIdeal(self.numerator * o.numerator, self.denominator * o.denominator, check=False)

    def inverse(self) -> "PrincipalFractionalIdeal":
        return PrincipalFractionalIdeal(self.denominator, self.numerator, check=False)

    def sharp(self) -> "PrincipalFractionalIdeal":
        return PrincipalFractionalIdeal(self.numerator.sharp(), self.denominator.sharp(), check=False)

    def __eq__(self, o):
        return isinstance(o, PrincipalFractionalIdeal) and ideal_equal(self, o)

    def __repr__(self):
        return f"({self.numerator}) / ({self.denominator})"


@dataclass
class IdealComparison:
    equal: bool
    left_divides: bool
    right_divides: bool
    margin: int
    certified: bool

    def __bool__(self):
        return self.equal


def compare_ideals(a: PrincipalFractionalIdeal, b: PrincipalFractionalIdeal, slack: int = DEFAULT_SLACK) -> IdealComparison:
    """(a) = (b) iff a_num b_den and b_num a_den divide each other."""
    x = a.numerator * b.denominator
    y = b.numerator * a.denominator
    mx, my = nzd_margin(x), nzd_margin(y)
    margin = min(mx, my)
    if margin <= 0:
        raise PrecisionError("cross products are not certified non-zero-divisors at this precision")
    l = _divides(x, y)
    r = _divides(y, x)
    return IdealComparison(l and r, l, r, margin, margin >= slack)


def ideal_equal(a: PrincipalFractionalIdeal, b: PrincipalFractionalIdeal, slack: int = DEFAULT_SLACK) -> bool:
    return compare_ideals(a, b, slack).equal


def ideal_contains(big: PrincipalFractionalIdeal, small: PrincipalFractionalIdeal) -> bool:
    """small is contained in big."""
    return _divides(big.numerator * small.denominator, small.numerator * big.denominator)


def fitting_fractional(mod: PresentedModule) -> PrincipalFractionalIdeal:
    if mod.rows != mod.cols:
        raise ValueError("principal Fitting ideal needs a square presentation")
    return PrincipalFractionalIdeal(mod.determinant())


# ---------------------------------------------------------------------------
# homomorphisms


def _hstack(A, B, rows):
    if not A:
        A = [[] for _ in range(rows)]
    if not B:
        B = [[] for _ in range(rows)]
    return [list(a) + list(b) for a, b in zip(A, B)]


class PresentedHom:
    """phi: coker(A1) -> coker(A2) induced by an n2 x n1 matrix with phi A1 inside the column span of A2."""

    def __init__(self, source: PresentedModule, target: PresentedModule, matrix, check: bool = True):
        if source.ring != target.ring:
            raise ValueError("ring mismatch")
        self.source = source
        self.target = target
        R = source.ring
        self.matrix = [[_elt(R, x) for x in row] for row in matrix]
        if len(self.matrix) != target.rows or any(len(r) != source.rows for r in self.matrix):
            raise ValueError("map matrix has the wrong shape")
        if check and not self.well_defined():
            raise ValueError("matrix does not carry relations to relations")

    def well_defined(self) -> bool:
        R = self.source.ring
        O = R.ring
        if self.source.cols == 0:
            return True
        img = mat_mul(self.matrix, self.source.matrix, R.zero()) if self.source.matrix[0] else []
        B = block_matrix(img, R)
        if self.target.cols == 0:
            return all(not x for row in B for x in row)
        T = block_matrix(self.target.matrix, R)
        S = ChainSNF(T, O, transforms=True)
        for j in range(len(B[0])):
            b = [row[j] for row in B]
            Ub = mat_vec(S.U, b, O.zero)
            for i, u in enumerate(Ub):
                if not u:
                    continue
                if i >= S.rank or O.valuation(u) < S.invariants[i]:
                    return False
        return True

    def compose(self, after: "PresentedHom") -> "PresentedHom":
        """after o self."""
        R = self.source.ring
        return PresentedHom(self.source, after.target, mat_mul(after.matrix, self.matrix, R.zero()), check=False)


def free_rank(mod: PresentedModule) -> int:
    return mod.rows - mod.cols


def auto_lift(mod: PresentedModule, rng=None, tries: int = 50):
    """An n x r matrix Psi (r = rows - cols) with [A | Psi] square of non-zero-divisor determinant."""
    R = mod.ring
    r = free_rank(mod)
    if r < 0:
        raise ValueError("more relations than generators")
    if r == 0:
        return [[] for _ in range(mod.rows)]
    for cols in itertools.combinations(range(mod.rows), r):
        Psi = [[R.one() if i == c else R.zero() for c in cols] for i in range(mod.rows)]
        if nzd_margin(det(_hstack(mod.matrix, Psi, mod.rows), R.zero(), R.one())) > 0:
            return Psi
    rng = rng or random.Random(0)
    for _ in range(tries):
        Psi = [[random_element(R, rng) for _ in range(r)] for _ in range(mod.rows)]
        if nzd_margin(det(_hstack(mod.matrix, Psi, mod.rows), R.zero(), R.one())) > 0:
            return Psi
    raise ValueError("no injective lift found")


def fitting_of_hom(hom: PresentedHom, psi_lift=None) -> PrincipalFractionalIdeal:
    """Fitt(coker psi)^{-1} Fitt(coker phi psi) for an injection psi: R^r -> source with torsion cokernel."""
    src, tgt = hom.source, hom.target
    R = src.ring
    r = free_rank(src)
    if r != free_rank(tgt):
        raise ValueError("kernel or cokernel is not torsion (ranks differ)")
    Psi = auto_lift(src) if psi_lift is None else [[_elt(R, x) for x in row] for row in psi_lift]
    if r and (len(Psi) != src.rows or any(len(row) != r for row in Psi)):
        raise ValueError("lift has the wrong shape")
    den = det(_hstack(src.matrix, Psi, src.rows), R.zero(), R.one())
    if nzd_margin(den) <= 0:
        raise ValueError("lift is not injective with torsion cokernel")
    phipsi = mat_mul(hom.matrix, Psi, R.zero()) if r else [[] for _ in range(tgt.rows)]
    num = det(_hstack(tgt.matrix, phipsi, tgt.rows), R.zero(), R.one())
    if nzd_margin(num) <= 0:
        raise ValueError("phi o psi is not injective in some component")
    return PrincipalFractionalIdeal(num, den, check=False)


# ---------------------------------------------------------------------------
# random instances


def random_element(R: GroupRing, rng, small: bool = False) -> GroupRingElement:
    O = R.ring
    q = O.modulus
    d = 1 if isinstance(O, IntegersModPN) else O.degree
    out = {}
    for i in range(R.group.order):
        if small and rng.random() < 0.5:
            continue
        c = tuple(rng.randrange(q) for _ in range(d))
        x = O.coerce(c[0]) if d == 1 else _from_tuple(O, c)
        if x:
            out[i] = x
    return GroupRingElement(R, out)


def _from_tuple(O, c):
    from .rings import UElem

    return UElem(O, tuple(c))


def random_nonunit(R: GroupRing, rng, max_val: int = 2, min_val: int = 0) -> GroupRingElement:
    """A non-zero-divisor of small valuation; never a unit when min_val >= 1."""
    O = R.ring
    p = O.p
    kind = rng.randrange(3)
    if kind == 0:
        return R.scalar(O.p_power(rng.randint(min_val, max(min_val, max_val)))) * (random_element(R, rng) * p + R.one())
    x = random_element(R, rng)
    # force the augmentation into pO so x is not a unit
    x = x - R.scalar(x.augmentation()) + R.scalar(O.p_power(rng.randint(1, max_val)))
    if kind == 1:
        return x
    g = R.group.elements[rng.randrange(R.group.order)]
    return R.basis(g) - R.one() + R.scalar(O.p_power(rng.randint(1, max_val)))


def random_unimodular(R: GroupRing, n: int, rng):
    """Product of a random unit lower and a random unit upper triangular matrix."""
    z, one = R.zero(), R.one()
    L = [[random_element(R, rng, small=True) if j < i else (one if i == j else z) for j in range(n)] for i in range(n)]
    U = [[random_element(R, rng, small=True) if j > i else (one if i == j else z) for j in range(n)] for i in range(n)]
    return mat_mul(L, U, z)


def random_square_module(R: GroupRing, n: int, rng, max_val: int = 2) -> PresentedModule:
    """coker(U D V) with D a diagonal of random non-zero-divisors and U, V unimodular."""
    z = R.zero()
    D = [[random_nonunit(R, rng, max_val) if i == j else z for j in range(n)] for i in range(n)]
    A = mat_mul(mat_mul(random_unimodular(R, n, rng), D, z), random_unimodular(R, n, rng), z)
    return PresentedModule(R, A, rows=n)


def random_module(R: GroupRing, n: int, free: int, rng, max_val: int = 2) -> PresentedModule:
    """A pd <= 1 module of rank `free`: a square torsion part plus a free part, mixed by a unimodular change."""
    z = R.zero()
    t = n - free
    T = random_square_module(R, t, rng, max_val)
    A = [list(row) for row in T.matrix] + [[z] * t for _ in range(free)]
    U = random_unimodular(R, n, rng)
    return PresentedModule(R, mat_mul(U, A, z) if t else [[] for _ in range(n)], rows=n)


def random_hom(source: PresentedModule, rng, extra: int = 0, max_val: int = 1) -> PresentedHom:
    """phi from source to coker(U [Phi A | C]) with Phi random, so phi is well defined by construction."""
    R = source.ring
    z = R.zero()
    n2 = source.rows + extra
    Phi = [[random_element(R, rng) for _ in range(source.rows)] for _ in range(n2)]
    for i in range(min(n2, source.rows)):
        Phi[i][i] = random_nonunit(R, rng, max_val)
    img = mat_mul(Phi, source.matrix, z) if source.cols else [[] for _ in range(n2)]
    C = [[random_element(R, rng) for _ in range(extra)] for _ in range(n2)]
    A2 = _hstack(img, C, n2)
    U = random_unimodular(R, n2, rng)
    A2 = mat_mul(U, A2, z) if A2 and A2[0] else [[] for _ in range(n2)]
    target = PresentedModule(R, A2, rows=n2)
    hom = PresentedHom(source, target, mat_mul(U, Phi, z))
    return hom


# ---------------------------------------------------------------------------
# lemma checks


def check_composition(R: GroupRing, rng, n: int = 2, free: int = 1) -> dict:
    """Fitt(phi' o phi) = Fitt(phi) Fitt(phi')."""
    M = random_module(R, n, free, rng)
    phi = random_hom(M, rng)
    phi2 = random_hom(phi.target, rng)
    comp = phi.compose(phi2)
    a = fitting_of_hom(phi)
    b = fitting_of_hom(phi2)
    c = fitting_of_hom(comp)
    cmp = compare_ideals(c, a * b)
    return {"equal": cmp.equal, "certified": cmp.certified, "margin": cmp.margin}


def check_diagram(R: GroupRing, rng, n1: int = 1, n3: int = 1, free1: int = 0, free3: int = 1) -> dict:
    """Fitt(phi_2) = Fitt(phi_1) Fitt(phi_3) for a map of extensions 0 -> M1 -> M2 -> M3 -> 0."""
    z = R.zero()
    M1 = random_module(R, n1, free1, rng)
    M3 = random_module(R, n3, free3, rng)
    phi1 = random_hom(M1, rng)
    phi3 = random_hom(M3, rng)
    c1, c3 = M1.cols, M3.cols
    d1, d3 = phi1.target.cols, phi3.target.cols
    # source relations [[A1, E], [0, A3]]
    E = [[random_element(R, rng) for _ in range(c3)] for _ in range(n1)]
    src = [list(M1.matrix[i]) + E[i] for i in range(n1)] + [[z] * c1 + list(M3.matrix[i]) for i in range(n3)]
    M2 = PresentedModule(R, src, rows=n1 + n3)
    Y = [[random_element(R, rng) for _ in range(n3)] for _ in range(n1)]
    Phi2 = [list(phi1.matrix[i]) + Y[i] for i in range(n1)] + [[z] * n1 + list(phi3.matrix[i]) for i in range(n3)]
    # Phi3 A3 = B3 X3 with X3 = [I; 0], so F = [Phi1 E + Y A3 | 0] puts Phi2 (E; A3) in the span
    top = [[z] * c3 for _ in range(n1)]
    if c3:
        top = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(mat_mul(phi1.matrix, E, z), mat_mul(Y, M3.matrix, z))]
    F = [top[i] + [z] * (d3 - c3) for i in range(n1)]
    tgt = [list(phi1.target.matrix[i]) + F[i] for i in range(n1)]
    tgt += [[z] * d1 + list(phi3.target.matrix[i]) for i in range(n3)]
    phi2 = PresentedHom(M2, PresentedModule(R, tgt, rows=n1 + n3), Phi2)
    f1 = fitting_of_hom(phi1)
    f3 = fitting_of_hom(phi3)
    f2 = fitting_of_hom(phi2)
    cmp = compare_ideals(f2, f1 * f3)
    return {"equal": cmp.equal, "certified": cmp.certified, "margin": cmp.margin}


def check_direct_sum(R: GroupRing, rng, n1: int = 1, n2: int = 2) -> dict:
    """Fitt(M1 + M2) = Fitt(M1) Fitt(M2)."""
    A = random_square_module(R, n1, rng)
    B = random_square_module(R, n2, rng)
    cmp = compare_ideals(fitting_fractional(A.direct_sum(B)), fitting_fractional(A) * fitting_fractional(B))
    return {"equal": cmp.equal, "certified": cmp.certified, "margin": cmp.margin}


def check_lift_independence(R: GroupRing, rng, n: int = 2, free: int = 1) -> dict:
    """Two lifts psi give the same Fitting ideal of phi."""
    M = random_module(R, n, free, rng)
    phi = random_hom(M, rng)
    first = fitting_of_hom(phi)
    z = R.zero()
    # a second lift: psi' = psi * u + (relations) with u a random non-zero-divisor scalar
    Psi = auto_lift(M)
    r = free_rank(M)
    u = random_nonunit(R, rng, 1)
    extra = [[random_element(R, rng) for _ in range(r)] for _ in range(M.cols)]
    shift = mat_mul(M.matrix, extra, z) if M.cols else [[z] * r for _ in range(n)]
    Psi2 = [[a * u + b for a, b in zip(r1, r2)] for r1, r2 in zip(Psi, shift)]
    second = fitting_of_hom(phi, Psi2)
    cmp = compare_ideals(first, second)
    return {"equal": cmp.equal, "certified": cmp.certified, "margin": cmp.margin}


def check_order_lemma(R: GroupRing, rng, n: int = 2) -> dict:
    """Fitt(N1) = Fitt(N2) iff Fitt(N1) is inside Fitt(N2) and #N1 = #N2.

    N1 = coker(A2 E) always has Fitt(N1) inside Fitt(N2); with det E a unit the
    orders agree and the ideals must be equal, with det E a non-unit both fail.
    """
    z = R.zero()
    N2 = random_square_module(R, n, rng)
    out = {}
    for label, unit in (("unit", True), ("nonunit", False)):
        if unit:
            Emat = random_unimodular(R, n, rng)
            d = random_element(R, rng) * R.ring.p + R.scalar(rng.randrange(1, R.ring.p))
            Emat[0] = [x * d for x in Emat[0]]
        else:
            Emat = [[random_nonunit(R, rng, 1, min_val=1 if i == 0 else 0) if i == j else z for j in range(n)] for i in range(n)]
            Emat = mat_mul(Emat, random_unimodular(R, n, rng), z)
        N1 = PresentedModule(R, mat_mul(N2.matrix, Emat, z), rows=n)
        F1, F2 = fitting_fractional(N1), fitting_fractional(N2)
        contained = ideal_contains(F2, F1)
        same_order = module_order(N1) == module_order(N2)
        equal = ideal_equal(F1, F2)
        out[label] = {"contained": contained, "same_order": same_order, "equal": equal,
                      "lemma_holds": equal == (contained and same_order)}
    out["ok"] = out["unit"]["lemma_holds"] and out["nonunit"]["lemma_holds"] and out["unit"]["equal"] and not out["nonunit"]["equal"]
    return out


def check_order_formula(mod: PresentedModule) -> dict:
    """#N = prod over components of #(O_psi / Fitt(N tensor O_psi)), and the block Smith route agrees."""
    rep = module_order_report(mod)
    return {"block": rep.route_block, "components": rep.route_components,
            "equal": rep.route_components == rep.route_block, "certified": rep.certified}
