"""The local lattice W_w of pairs (x, y), its maps to Z[G_v], and the modules A_v.

Elements of Z[G_v] are stored as group-ring elements of the ambient G
supported on G_v; elements of Z[G_v/I_v] as group-ring elements of G/I_v.
"""

from __future__ import annotations

from fractions import Fraction

from .arith import elementary_divisors, vp
from .group_ring import GroupRing, GroupRingElement
from .linalg import field_rank
from .rings import QQ, ZZ
from .stickelberger import PlaceData, euler_factor


class LocalData:
    """Everything attached to one place: G_v, I_v, phi_v, D = G_v/I_v and the maps between them."""

    def __init__(self, v: PlaceData, ring=ZZ):
        self.place = v
        self.G = v.group
        self.ring = ring
        self.Gv = v.decomposition
        self.I = v.inertia
        self.q = self.G.quotient(self.I)
        self.D = self.q.image_subgroup(self.Gv)
        self.big = GroupRing(self.G, ring)
        self.small = GroupRing(self.q.target, ring)
        self.phi = v.frobenius
        self.phibar = self.q(self.phi)
        self.nu_I = self.big.norm_element(self.I)
        self.Gv_list = self.Gv.sorted_elements()
        self.D_list = self.D.sorted_elements()
        self.f = self.q.target.element_order(self.phibar)
        assert self.f == self.D.order

    def bar(self, x: GroupRingElement) -> GroupRingElement:
        return x.project(self.q)

    def lift(self, y: GroupRingElement) -> GroupRingElement:
        """A lift of y to Z[G_v] (each d goes to some preimage in G_v)."""
        d = {}
        for h, c in y.items():
            d[self._lift_elt(h)] = c
        return self.big.from_dict(d)

    def _lift_elt(self, h):
        for g in self.Gv_list:
            if self.q(g) == h:
                return g
        raise ValueError("element outside G_v/I_v")

    def one_minus_phi_inv(self) -> GroupRingElement:
        T = self.q.target
        return self.small.one() - self.small.basis(T.inv(self.phibar))

    def in_W(self, x: GroupRingElement, y: GroupRingElement) -> bool:
        if any(g not in self.Gv.elements for g, _ in x.items()):
            return False
        if any(h not in self.D.elements for h, _ in y.items()):
            return False
        if x.augmentation():
            return False
        return self.bar(x) == self.one_minus_phi_inv() * y

    def y_for(self, g) -> GroupRingElement:
        """y with (1 - phi^{-1}) y = image of g - 1, namely phi + ... + phi^k for g-bar = phi^k."""
        T = self.q.target
        gbar = self.q(g)
        k = 0
        h = T.identity
        while h != gbar:
            h = T.mul(h, self.phibar)
            k += 1
            if k > self.f:
                raise ValueError("g is not in the decomposition group")
        out = self.small.zero()
        h = T.identity
        for _ in range(k):
            h = T.mul(h, self.phibar)
            out = out + self.small.basis(h)
        return out

    def spanning_set(self):
        """(g - 1, y_g) for g in G_v and (0, nu_D)."""
        out = []
        one = self.big.one()
        for g in self.Gv_list:
            if g == self.G.identity:
                continue
            out.append((self.big.basis(g) - one, self.y_for(g)))
        out.append((self.big.zero(), self.small.sum_of(self.D.elements)))
        for x, y in out:
            assert self.in_W(x, y)
        return out


class LocalW:
    """A pair (x, y) in W_w; the constructor checks x-bar = (1 - phi^{-1}) y."""

    def __init__(self, data: LocalData, x: GroupRingElement, y: GroupRingElement):
        if not data.in_W(x, y):
            raise ValueError("pair violates x-bar = (1 - phi^{-1}) y")
        self.data = data
        self.x = x
        self.y = y

    def __add__(self, o):
        return LocalW(self.data, self.x + o.x, self.y + o.y)

    def scale(self, a):
        return LocalW(self.data, self.x * a, self.y * a)


def w_map(e: LocalW, kind: str = "f", c_v=1) -> GroupRingElement:
    d = e.data
    if kind == "f":
        return e.x + d.nu_I * d.lift(e.y)
    if kind == "f_bar":
        return e.x + d.nu_I * d.lift(e.y) * c_v
    if kind == "iota":
        if d.I.order != 1:
            raise ValueError("iota is only defined at unramified places")
        return e.y
    raise ValueError(f"unknown map {kind!r}")


def random_W_element(data: LocalData, rng, bound=3) -> LocalW:
    x = data.big.zero()
    y = data.small.zero()
    for xi, yi in data.spanning_set():
        a = rng.randint(-bound, bound)
        x = x + xi * a
        y = y + yi * a
    return LocalW(data, x, y)


def _vector_on(elements, G, x: GroupRingElement):
    return [x.coeff(g) for g in elements]


def cokernel_of_f(v: PlaceData, c_v: int = 1) -> list[int]:
    """Elementary divisors (!= 1) of Z[G_v] / f-bar(W_w)."""
    d = LocalData(v, ZZ)
    cols = []
    for x, y in d.spanning_set():
        img = w_map(LocalW(d, x, y), "f_bar", c_v)
        cols.append(_vector_on(d.Gv_list, d.G, img))
    A = [[cols[j][i] for j in range(len(cols))] for i in range(len(d.Gv_list))]
    return [e for e in elementary_divisors(A) if e != 1]


def av_module(v: PlaceData, c_v: int = 1) -> list[int]:
    """Elementary divisors (!= 1) of Z[G_v/I_v]/(1 - phi^{-1} + c_v #I_v)."""
    d = LocalData(v, ZZ)
    rel = d.one_minus_phi_inv() + d.small.scalar(c_v * d.I.order)
    cols = []
    for h in d.D_list:
        cols.append(_vector_on(d.D_list, d.q.target, rel * d.small.basis(h)))
    A = [[cols[j][i] for j in range(len(cols))] for i in range(len(d.D_list))]
    return [e for e in elementary_divisors(A) if e != 1]


def f_bar_injective(v: PlaceData, c_v=1) -> bool:
    d = LocalData(v, QQ)
    rows = []
    for x, y in d.spanning_set():
        img = w_map(LocalW(d, x, y), "f_bar", c_v)
        rows.append(_vector_on(d.Gv_list, d.G, img))
    return field_rank(rows, Fraction(1)) == len(rows)


def verify_variance_identity(v: PlaceData, c_v, samples: int = 10, rng=None) -> dict:
    """hbar_v (x + nu y) = h_v (x + c_v nu y) on random elements of W_w."""
    import random

    rng = rng or random.Random(0)
    d = LocalData(v, QQ)
    # h_v and hbar_v for the local group: I_v and phi_v as given
    h = euler_factor(v, "h")
    hb = euler_factor(v, "h_bar", c_v=c_v)
    ok = True
    membership = True
    for _ in range(samples):
        e = random_W_element(d, rng)
        lhs = hb * w_map(e, "f")
        rhs = h * (e.x + d.nu_I * d.lift(e.y) * Fraction(c_v))
        if lhs != rhs:
            ok = False
        if d.nu_I * e.x != d.nu_I * d.lift(d.one_minus_phi_inv() * e.y):
            membership = False
    return {"variance": ok, "membership": membership, "samples": samples}


def av_minus_order_check(v: PlaceData) -> dict:
    """Odd part of #A_v^- against the odd part of prod over odd psi of psi(h_v)."""
    d = LocalData(v, ZZ)
    G = v.group
    T = d.q.target
    rel = d.one_minus_phi_inv() + d.small.scalar(d.I.order)
    # A_v as a Z[G]-module is Z[G/I_v]/(rel); its minus part with 2 inverted is the quotient by (1 + c)
    cbar = d.q(G.c)
    plus = d.small.one() + d.small.basis(cbar)
    els = T.elements
    cols = []
    for gen in (rel, plus):
        for h in els:
            cols.append((gen * d.small.basis(h)).vector())
    A = [[col[i] for col in cols] for i in range(len(els))]
    divs = elementary_divisors(A)
    if any(x == 0 for x in divs):
        raise ArithmeticError("A_v^- is not finite")
    order = 1
    for x in divs:
        order *= x
    while order % 2 == 0:
        order //= 2
    h = euler_factor(v, "h")
    prod_val = None
    from .rings import cyclotomic_field

    F = cyclotomic_field(G.exponent if G.exponent % 2 == 0 else 2 * G.exponent)
    acc = F.one
    for psi in G.odd_characters():
        acc = acc * h.evaluate(psi, F)
    prod_val = acc.to_rational()
    num = abs(prod_val)
    while num.numerator % 2 == 0 and num != 0:
        num = num / 2
    while num.denominator % 2 == 0:
        num = num * 2
    return {"order_odd": order, "product_odd": num, "equal": Fraction(order) == num}


def local_order_ok(v: PlaceData, c_v: int = 1) -> bool:
    a = cokernel_of_f(v, c_v)
    b = av_module(v, c_v)
    return sorted(a) == sorted(b)


def p_part(divs, p):
    return sorted(int(vp(x, p)) for x in divs if x % p == 0)
