"""Euler factors, Stickelberger elements and hypothesis checks for abelian CM extensions.

Over F = Q the extension is a CM subfield H = Q(zeta_m)^N of a cyclotomic
field; Galois elements are sigma_a : zeta -> zeta^a and c = sigma_{-1}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .arith import factorint, vp
from .dirichlet import DirichletCharacter, l_value, unit_group
from .group_ring import GroupRing, GroupRingElement, character_idempotent, minus_projection, try_invert
from .groups import Character, FiniteAbelianGroup, Subgroup
from .rings import QQ, cyclotomic_field, unramified_ring


class HypothesisError(ValueError):
    def __init__(self, condition, detail=""):
        super().__init__(f"{condition} fails{': ' + detail if detail else ''}")
        self.condition = condition


@dataclass
class PlaceData:
    label: object
    norm: int
    inertia: Subgroup
    frobenius: tuple
    above_p: bool = False

    @property
    def group(self) -> FiniteAbelianGroup:
        return self.inertia.group

    @property
    def decomposition(self) -> Subgroup:
        return self.inertia.join(Subgroup(self.group, [self.frobenius]))

    @property
    def inertia_order(self) -> int:
        return self.inertia.order

    def with_frobenius(self, g) -> "PlaceData":
        return PlaceData(self.label, self.norm, self.inertia, self.group.reduce(g), self.above_p)

    def project(self, q) -> "PlaceData":
        return PlaceData(self.label, self.norm, q.image_subgroup(self.inertia), q(self.frobenius), self.above_p)

    def inertia_prime_to(self, p: int) -> Subgroup:
        """I_v' = I_v intersected with the prime-to-p part of G."""
        G = self.group
        return Subgroup(G, [g for g in self.inertia.elements if G.element_order(g) % p])


# ---------------------------------------------------------------------------
# Euler factors


def euler_factor(v: PlaceData, kind: str = "h", c_v=None, ring=QQ) -> GroupRingElement:
    """h_v, h'_v or the variant with scalar c_v, in ring[G]."""
    A = GroupRing(v.group, ring)
    nu = A.norm_element(v.inertia)
    e = v.inertia_order
    phi_inv = A.basis(v.group.inv(v.frobenius))
    one = A.one()
    if kind == "h":
        return one - nu * phi_inv * Fraction(1, e) + nu
    if kind == "h_prime":
        return one - nu * phi_inv * Fraction(v.norm, e)
    if kind == "h_bar":
        if c_v is None:
            raise ValueError("h_bar needs a scalar c_v")
        return one - nu * phi_inv * Fraction(1, e) + nu * Fraction(c_v)
    if kind == "dk":
        # 1 - (nu/#I) phi^{-1}, the factor in the Deligne-Ribet normalized element
        return one - nu * phi_inv * Fraction(1, e)
    raise ValueError(f"unknown Euler factor kind {kind!r}")


# ---------------------------------------------------------------------------
# abelian CM subfields of cyclotomic fields


class CyclotomicExtension:
    """H = Q(zeta_m)^N with G = Gal(H/Q) = (Z/m)^x / N."""

    def __init__(self, m: int, N_units=None, N: Subgroup | None = None):
        if m < 3 or m % 4 == 2:
            raise ValueError("use a modulus m >= 3 with m not 2 mod 4")
        self.m = m
        self.units = unit_group(m)
        full = self.units.group
        self.full_group = full
        if N is None:
            N = full.subgroup([self.units.log(u) for u in (N_units or [])])
        self.kernel = N
        if full.c in N.elements:
            raise ValueError("the fixed field is not CM (c lies in N)")
        self.q = full.quotient(N)
        self.group = self.q.target
        self._places = {}

    def __repr__(self):
        return f"CyclotomicExtension(m={self.m}, [H:Q]={self.group.order})"

    def sigma(self, a: int):
        """Image of sigma_a in G."""
        return self.q(self.units.log(a))

    def full_place(self, l: int) -> PlaceData:
        m = self.m
        U = self.units
        G = self.full_group
        if m % l:
            return PlaceData(l, l, G.trivial_subgroup(), U.log(l))
        e = 0
        mm = m
        while mm % l == 0:
            mm //= l
            e += 1
        le = l**e
        inertia = [a for a in U.units() if a % mm == 1 % mm]
        I = U.subgroup_of_units(inertia)
        # Frobenius: b = l mod m', b = 1 mod l^e
        if mm > 1:
            from .arith import crt

            b = crt([l % mm, 1], [mm, le])
        else:
            b = 1
        return PlaceData(l, l, I, U.log(b))

    def place(self, l: int, p: int | None = None) -> PlaceData:
        key = l
        if key not in self._places:
            self._places[key] = self.full_place(l).project(self.q)
        v = self._places[key]
        return PlaceData(v.label, v.norm, v.inertia, v.frobenius, above_p=(p == l))

    def ramified_primes(self) -> list[int]:
        return sorted(l for l in factorint(self.m) if self.place(l).inertia.order > 1)

    def quotient(self, S: Subgroup) -> "CyclotomicExtension":
        """The subfield H^S for a subgroup S of G (must not contain c)."""
        return CyclotomicExtension(self.m, N=self.q.preimage(S))

    def dirichlet(self, psi: Character) -> DirichletCharacter:
        """The Dirichlet character mod m given by psi composed with (Z/m)^x -> G."""
        full = self.full_group
        exps = []
        for i, n in enumerate(full.orders):
            g = [0] * full.rank
            g[i] = 1
            k = psi.value_exponent(self.q(tuple(g)))
            exps.append(k * n // psi.order if psi.order > 1 else 0)
        return DirichletCharacter(self.m, exps)

    def characters(self):
        return self.group.characters()

    def odd_characters(self):
        return self.group.odd_characters()

    # -- roots of unity
    def contains_zeta_p(self, p: int) -> bool:
        """Whether mu_p lies in H, i.e. N acts trivially on zeta_p (needs p | m)."""
        if self.m % p:
            return False
        return all(self.units.exp(g) % p == 1 for g in self.kernel.gens)

    def mu_p_character(self, p: int) -> Character | None:
        """The character of G by which G acts on mu_p (None if zeta_p is not in H)."""
        if not self.contains_zeta_p(p):
            return None
        G = self.group
        # exponent k with sigma_g acting as a -> a^k on zeta_p; character values in mu_{p-1}
        from .arith import primitive_root

        r = primitive_root(p)
        dlog = {pow(r, j, p): j for j in range(p - 1)}
        exps = []
        for i, n in enumerate(G.orders):
            h = [0] * G.rank
            h[i] = 1
            a = self.units.exp(self.q.lift(tuple(h)))
            j = dlog[a % p]
            # omega(sigma) = zeta_{p-1}^j ; exponent on Z/n is j n / (p-1)
            assert (j * n) % (p - 1) == 0
            exps.append(j * n // (p - 1))
        return Character(G, exps)


# ---------------------------------------------------------------------------
# omega, theta, Theta


def _common_field(G: FiniteAbelianGroup):
    return cyclotomic_field(max(G.exponent, 1) if G.exponent % 2 == 0 else 2 * G.exponent)


def smoothed_l_value(ext: CyclotomicExtension, psi: Character, sigma_prime=(), k: int = 1, deplete=()):
    """L^{Sigma'}(psi, 1-k): smoothing factors only at primes not dividing the conductor."""
    chi = ext.dirichlet(psi)
    f = chi.conductor()
    smooth = [l for l in sigma_prime if f % l]
    # primes dividing m but not f: chi(l) is read through the primitive character
    return l_value(chi, k, deplete=[l for l in deplete if f % l], smooth=smooth)


def omega_element(ext: CyclotomicExtension, sigma_prime=(), k: int = 1, deplete=()) -> GroupRingElement:
    """sum over odd psi of L^{Sigma'}(psi^{-1}, 1-k) e_psi, as an element of Q[G] (verified rational)."""
    G = ext.group
    F = _common_field(G)
    total = GroupRing(G, F).zero()
    for psi in G.odd_characters():
        L = smoothed_l_value(ext, psi.inverse(), sigma_prime, k, deplete)
        total = total + character_idempotent(psi, F) * F.coerce(L)
    return _to_rational(total)


def _to_rational(x: GroupRingElement) -> GroupRingElement:
    A = GroupRing(x.group, QQ)
    return x.map_coeffs(A, lambda c: c.to_rational())


def stickelberger_element(ext: CyclotomicExtension, sigma_f, sigma_prime=(), k: int = 1, check=True) -> GroupRingElement:
    """theta_Sigma^{Sigma'} (k = 1) or the depleted Theta_n(1 - k) for n = prod(sigma_f).

    sigma_f lists the finite primes of Sigma; sigma_prime the primes of Sigma'.
    """
    sigma_f = sorted(set(sigma_f))
    sigma_prime = sorted(set(sigma_prime))
    if check:
        if set(sigma_f) & set(sigma_prime):
            raise HypothesisError("H1", "Sigma and Sigma' intersect")
    if k == 1:
        w = omega_element(ext, sigma_prime)
        out = w
        for l in sigma_f:
            out = out * minus_projection(euler_factor(ext.place(l), "h"))
        return out
    return omega_element(ext, (), k=k, deplete=sigma_f)


def dk_theta(ext: CyclotomicExtension, sigma_f, sigma_prime=()) -> GroupRingElement:
    """prod (1 - nu_I/#I phi^{-1}) omega^{Sigma'}."""
    out = omega_element(ext, sorted(set(sigma_prime)))
    for l in sorted(set(sigma_f)):
        out = out * euler_factor(ext.place(l), "dk")
    return out


def classical_stickelberger(m: int, ext: CyclotomicExtension | None = None) -> GroupRingElement:
    """sum_a (1/2 - {a/m}) sigma_a^{-1}; an independent oracle.

    Lives in Q[(Z/m)^x] in its unit-group presentation, or in Q[Gal(H/Q)]
    when ext (with ext.m == m) is given.
    """
    U = unit_group(m)
    if ext is not None and ext.m != m:
        raise ValueError("ext has a different modulus")
    G = U.group if ext is None else ext.group
    A = GroupRing(G, QQ)
    d = {}
    for a in U.units():
        g = G.inv(U.log(a) if ext is None else ext.sigma(a))
        d[g] = d.get(g, 0) + Fraction(1, 2) - Fraction(a, m)
    return A.from_dict(d)


def theta_integrality(theta: GroupRingElement, p: int, precision: int = 40) -> dict:
    """Minimum p-adic valuation over the coefficients and whether it is >= 0."""
    vals = [vp(c, p) for c in theta.c.values()]
    mn = min(vals) if vals else float("inf")
    return {
        "p": p,
        "precision": precision,
        "min_valuation": None if mn == float("inf") else int(mn),
        "integral": mn >= 0,
        "margin": None if mn == float("inf") else int(min(mn, precision)),
    }


def theta_values(theta: GroupRingElement) -> dict:
    """psi(theta) for each odd character psi, keyed by character index."""
    out = {}
    for psi in theta.group.odd_characters():
        out[psi.index()] = theta.evaluate(psi)
    return out


# ---------------------------------------------------------------------------
# functoriality


def verify_theta_functoriality(ext: CyclotomicExtension, S: Subgroup, sigma_f, sigma_prime=()) -> dict:
    """Compare pi(theta_H) with prod pi(h_{v,H})/h_{v,K} * theta_K in Q[Gal(K/Q)]."""
    K = ext.quotient(S)
    q = ext.group.quotient(S)
    theta_H = stickelberger_element(ext, sigma_f, sigma_prime)
    theta_K = stickelberger_element(K, sigma_f, sigma_prime)
    lhs = theta_H.project(q)
    # theta_K lives on K.group; transport to q.target via sigma_a labels
    theta_K = _transport(theta_K, K, q, ext)
    rhs = theta_K
    hbar_ok = True
    for l in sorted(set(sigma_f)):
        vH = ext.place(l)
        vK = _transport_place(K.place(l), K, q, ext)
        c_v = vH.inertia.intersect(S).order
        piH = euler_factor(vH, "h").project(q)
        hK = euler_factor(vK, "h")
        if piH != euler_factor(vK, "h_bar", c_v=c_v):
            hbar_ok = False
        inv = try_invert(hK)
        if inv is None:
            raise ArithmeticError("h_v is a zero divisor")
        rhs = rhs * piH * inv
    rhs = minus_projection(rhs)
    return {"equal": lhs == rhs, "hbar_identity": hbar_ok, "lhs": lhs, "rhs": rhs}


def _transport_place(v: PlaceData, K: CyclotomicExtension, q, ext: CyclotomicExtension) -> PlaceData:
    def move(g):
        return q(ext.sigma(K.units.exp(K.q.lift(g))))

    inertia = Subgroup(q.target, [move(g) for g in v.inertia.gens])
    return PlaceData(v.label, v.norm, inertia, move(v.frobenius), v.above_p)


def _transport(x: GroupRingElement, K: CyclotomicExtension, q, ext: CyclotomicExtension) -> GroupRingElement:
    """Move an element of Q[Gal(K/Q)] onto q.target via sigma_a -> sigma_a."""
    A = GroupRing(q.target, x.ring)
    d = {}
    for g, c in x.items():
        a = K.units.exp(K.q.lift(g))
        d[q(ext.sigma(a))] = c
    return A.from_dict(d)


# ---------------------------------------------------------------------------
# hypotheses


def mu_sigma_vanishes(ext: CyclotomicExtension, p: int, sigma_prime) -> bool:
    """mu_{p^infty}(H)^{Sigma'} = 1 iff zeta_p is not in H or Sigma' has a prime other than p."""
    if not ext.contains_zeta_p(p):
        return True
    return any(q != p for q in sigma_prime)


def mu_sigma_chi_vanishes(ext: CyclotomicExtension, p: int, sigma_prime, chi: Character, split) -> bool:
    """The chi-part of mu_{p^infty}(H)^{Sigma'} (chi a character of G')."""
    if mu_sigma_vanishes(ext, p, sigma_prime):
        return True
    omega = ext.mu_p_character(p)
    for g in split.Gprime.generators():
        a = omega.value_exponent(split.embed_prime(g))
        b = chi.value_exponent(g)
        if (a * chi.order - b * omega.order) % (chi.order * omega.order):
            return True
    return False


def check_hypotheses(ext: CyclotomicExtension, sigma_f, sigma_prime, p: int, chi: Character | None = None) -> dict:
    sigma_f = sorted(set(sigma_f))
    sigma_prime = sorted(set(sigma_prime))
    G = ext.group
    split = G.p_split(p)
    ram = ext.ramified_primes()
    wild = [l for l in ram if ext.place(l).inertia.order % l == 0]
    out = {
        "S_ram": ram,
        "S_wild": wild,
        "H1": not (set(sigma_f) & set(sigma_prime)),
        "H2": True,  # the infinite places are always put in Sigma
    }
    sigma_ur = [l for l in sigma_prime if l not in ram]
    out["Sigma_prime_ur"] = sigma_ur
    bad = []
    for l in ram:
        v = ext.place(l)
        if v.inertia.order % p == 0:
            Ip = v.inertia_prime_to(p)
            if G.c not in Ip.elements:
                bad.append(l)
    out["S_bad"] = bad
    covered = set(sigma_f) | set(sigma_prime)
    out["H3_p"] = mu_sigma_vanishes(ext, p, sigma_prime)
    out["H3prime_p"] = mu_sigma_vanishes(ext, p, sigma_ur)
    out["H4_p"] = set(bad) <= covered and all(l in sigma_f for l in bad if l == p)
    out["H4"] = set(ram) <= covered and set(wild) <= set(sigma_f)
    if chi is not None:
        bad_chi = []
        for l in ram:
            v = ext.place(l)
            if v.inertia.order % p == 0:
                Ip = [split.split(g)[0] for g in v.inertia.elements]
                if all(chi.value_exponent(g) == 0 for g in Ip):
                    bad_chi.append(l)
        out["S_bad_chi"] = bad_chi
        out["H3_p_chi"] = mu_sigma_chi_vanishes(ext, p, sigma_prime, chi, split)
        out["H3prime_p_chi"] = mu_sigma_chi_vanishes(ext, p, sigma_ur, chi, split)
        out["H4_p_chi"] = set(bad_chi) <= covered and all(l in sigma_f for l in bad_chi if l == p)
    return out


def auxiliary_prime(ext: CyclotomicExtension, p: int, avoid=()) -> int:
    """Least prime not dividing m p and not in `avoid`; it satisfies the (H3') shape."""
    l = 2
    while True:
        if factorint(l) == {l: 1} and ext.m % l and l != p and l not in avoid:
            return l
        l += 1


# ---------------------------------------------------------------------------
# main theorem conditions on decomposition data


def check_main_theorem_conditions(G: FiniteAbelianGroup, p_places: list[PlaceData], p: int) -> dict:
    """Conditions (i), (ii) and the per-character condition (a); asserts (a) <=> (b)."""
    cond_i = any(v.inertia.order % p for v in p_places)
    Gp = Subgroup(G, [g for v in p_places for g in v.decomposition.gens])
    cond_ii = G.c in Gp.elements
    split = G.p_split(p)
    a_holds = True
    failing = None
    for chi in split.Gprime.odd_characters():
        bad_all = True
        for v in p_places:
            dec_prime = [split.split(g)[0] for g in v.decomposition.elements]
            trivial_on_dec = all(chi.value_exponent(g) == 0 for g in dec_prime)
            # image in Gal(H^chi/F) = G/ker(chi): ramified iff the inertia image is nontrivial
            ramified = any(
                chi.value_exponent(split.split(g)[0]) != 0 or any(split.split(g)[1]) for g in v.inertia.elements
            )
            if not (trivial_on_dec and ramified):
                bad_all = False
                break
        if bad_all:
            a_holds = False
            failing = chi
            break
    b_holds = cond_i or cond_ii
    return {
        "i": cond_i,
        "ii": cond_ii,
        "a": a_holds,
        "b": b_holds,
        "equivalent": a_holds == b_holds,
        "witness": None if failing is None else list(failing.exps),
    }


# ---------------------------------------------------------------------------
# x_k


def x_k_element(ext: CyclotomicExtension, chi: Character, k: int, p: int, deplete=(), precision: int = 40) -> dict:
    """Theta(1-k)^chi / Theta(0)^chi for H with G = G' (the P_ba = P situation).

    chi is an odd character of ext.group; values are read in O_chi/p^N.
    """
    if k == 1:
        return {"value": 1, "valuation": 0, "integral": True, "minus_one_valuation": precision}
    num = smoothed_l_value(ext, chi.inverse(), (), k, deplete)
    den = smoothed_l_value(ext, chi.inverse(), (), 1, deplete)
    if not den:
        raise ArithmeticError("denominator vanishes")
    x = num / den
    integral = all(vp(c, p) >= 0 for c in x.c)
    out = {"value": x, "integral": integral}
    if integral and chi.order % p:
        O = unramified_ring(p, precision, x.field.n)
        X = O.from_cyc(x)
        out["O_value"] = X
        out["minus_one_valuation"] = O.valuation(X - O.one)
    return out
