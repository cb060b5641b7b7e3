"""Abstract arithmetic settings: a CM abelian group with a table of primes.

A setting records G = Gal(H/F) with complex conjugation c, a prime p, and
for every prime label its norm, inertia group, a Frobenius (modulo inertia),
whether it lies over p, and its conductor exponent in H/F.  Non-p ramified
primes are tamely ramified (conductor exponent 1).  Only these data enter
the coefficient calculus, so random settings stand in for number fields.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from ..arith import factorint, lcm
from ..group_ring import GroupRing, GroupRingElement
from ..groups import Character, FiniteAbelianGroup, Subgroup
from ..rings import QQ, cyclotomic_field, unramified_ring
from ..stickelberger import PlaceData
from .ideals import IdealIndex, ideals_up_to


class SettingError(ValueError):
    """A setting violates one of its structural conditions."""


@dataclass(frozen=True)
class SettingPrime:
    label: str
    norm: int
    inertia: Subgroup
    frobenius: tuple
    above_p: bool
    conductor_exponent: int = 0

    @property
    def ramified(self) -> bool:
        return self.inertia.order > 1

    @property
    def decomposition(self) -> Subgroup:
        return self.inertia.join(Subgroup(self.inertia.group, [self.frobenius]))

    def place(self) -> PlaceData:
        return PlaceData(self.label, self.norm, self.inertia, self.frobenius, self.above_p)


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


class ArithmeticSetting:
    def __init__(self, group: FiniteAbelianGroup, p: int, primes, level, degree: int = 1, chi_exps=None, check=True):
        self.group = group
        self.p = p
        self.degree = int(degree)
        self.primes = {}
        for v in primes:
            if v.label in self.primes:
                raise SettingError(f"duplicate prime label {v.label}")
            self.primes[v.label] = v
        self.norms = {v.label: v.norm for v in primes}
        self.level = level if isinstance(level, IdealIndex) else IdealIndex(level)
        self.split = group.p_split(p)
        Gp = self.split.Gprime
        if Gp.exponent != Gp.order:
            raise SettingError("the prime-to-p part G' must be cyclic")
        if chi_exps is None:
            chi = next((x for x in Gp.characters() if x.order == Gp.order and x.is_odd()), None)
            if chi is None:
                raise SettingError("G' has no faithful odd character")
        else:
            chi = Character(Gp, chi_exps)
        if chi.order != Gp.order:
            raise SettingError("chi must be faithful on G'")
        if not chi.is_odd():
            raise SettingError("chi must be odd")
        self.chi = chi
        self.e = Gp.order
        self.K = cyclotomic_field(self.e)
        self.Pgroup = self.split.P
        self.A = GroupRing(self.Pgroup, self.K)
        self.QG = GroupRing(group, QQ)
        self._proj = {}
        if check:
            self.validate()

    # -- basic data -------------------------------------------------------

    def __repr__(self):
        return f"ArithmeticSetting(G={list(self.group.orders)}, p={self.p}, level={self.level})"

    @property
    def labels(self):
        return sorted(self.primes)

    @property
    def p_adic(self):
        return [v for v in self.labels if self.primes[v].above_p]

    @cached_property
    def conductor(self) -> IdealIndex:
        return IdealIndex({v.label: v.conductor_exponent for v in self.primes.values() if v.ramified})

    def norm(self, a: IdealIndex) -> int:
        return a.norm(self.norms)

    def ideals(self, bound: int):
        key = ("ideals", bound)
        if key not in self.__dict__:
            self.__dict__[key] = ideals_up_to(self.norms, bound)
        return self.__dict__[key]

    # -- Hall divisors of the level ---------------------------------------

    @cached_property
    def P(self) -> IdealIndex:
        return self.level.restrict(self.p_adic)

    @cached_property
    def P_p(self) -> IdealIndex:
        return self.P.restrict([v for v in self.P.support if self.primes[v].inertia.is_p_group(self.p)])

    @cached_property
    def P_ba(self) -> IdealIndex:
        return self.P.restrict([v for v in self.P.support if self.primes[v].decomposition.is_p_group(self.p)])

    @cached_property
    def P_prime(self) -> IdealIndex:
        """Product of the designated p-adic primes not dividing the level."""
        return IdealIndex.from_support([v for v in self.p_adic if v not in self.level.support])

    @cached_property
    def P_prime_ba(self) -> IdealIndex:
        return self.P_prime.restrict([v for v in self.P_prime.support if self.primes[v].decomposition.is_p_group(self.p)])

    def n_p(self, modulus: IdealIndex | None = None) -> IdealIndex:
        """Hall divisor of the modulus at primes whose inertia group is a p-group."""
        n = self.level if modulus is None else modulus
        return n.restrict([v for v in n.support if self.primes[v].inertia.is_p_group(self.p)])

    # -- the conditions ---------------------------------------------------

    def validate(self):
        G = self.group
        p = self.p
        if G.c == G.identity:
            raise SettingError("complex conjugation must be non-trivial")
        for v in self.primes.values():
            if v.inertia.group != G:
                raise SettingError(f"inertia of {v.label} lives in another group")
            if v.norm < 2:
                raise SettingError(f"bad norm for {v.label}")
            f = factorint(v.norm)
            if len(f) != 1:
                raise SettingError(f"norm of {v.label} is not a prime power")
            ell = next(iter(f))
            if v.above_p != (ell == p):
                raise SettingError(f"{v.label}: residue characteristic does not match above_p")
            if v.ramified != (v.conductor_exponent > 0):
                raise SettingError(f"{v.label}: conductor exponent inconsistent with inertia")
            if v.ramified and not v.above_p:
                if v.conductor_exponent != 1 or v.inertia.order % ell == 0:
                    raise SettingError(f"{v.label}: only tame ramification away from p is modelled")
                if (v.norm - 1) % v.inertia.order:
                    raise SettingError(f"{v.label}: N(v) = 1 mod #I_v fails")
                gens = [g for g in v.inertia.elements if G.element_order(g) == v.inertia.order]
                if not gens:
                    raise SettingError(f"{v.label}: tame inertia must be cyclic")
        self.check_star(self.level)
        # non-p part of n_p is square-free
        np_ = self.n_p()
        if not np_.remove(self.p_adic).is_squarefree():
            raise SettingError("n_p / gcd(n_p, p^oo) is not square-free")
        if not (self.P_ba.hall_divides(self.P_p) and self.P_p.hall_divides(self.P)):
            raise SettingError("P_ba || P_p || P fails")

    def check_star(self, n: IdealIndex, conductor: IdealIndex | None = None):
        """n = f Q L with Q supported over p, L square-free and coprime to f."""
        f = self.conductor if conductor is None else conductor
        if not f.divides(n):
            raise SettingError(f"conductor {f} does not divide the modulus {n}")
        rest = n / f
        for v, e in rest.exps:
            if self.primes[v].above_p:
                continue
            if e > 1 or f.exponent(v):
                raise SettingError(f"the non-p part of n/f is not square-free and coprime to f at {v}")
        return True

    # -- the tautological character in the chi-component ------------------

    def proj(self, g) -> GroupRingElement:
        """Image of the group element g in K[P] = Q[G]^chi: chi(g') g_p."""
        g = self.group.reduce(g)
        x = self._proj.get(g)
        if x is None:
            gprime, gp = self.split.split(g)
            x = self.A.basis(gp, self.chi.value(gprime, self.K))
            self._proj[g] = x
        return x

    def project(self, x: GroupRingElement) -> GroupRingElement:
        """The chi-projection Q[G] -> K[P]."""
        els = self.group.elements
        out = self.A.zero()
        for i, c in x.c.items():
            out = out + self.proj(els[i]) * c
        return out

    def nu(self, S: Subgroup) -> GroupRingElement:
        return self.QG.sum_of(S.elements)

    def frob(self, label):
        return self.primes[label].frobenius

    def to_padic(self, x: GroupRingElement, N: int = 40) -> GroupRingElement:
        R = unramified_ring(self.p, N, self.e)
        return x.map_coeffs(GroupRing(self.Pgroup, R), R.from_cyc)

    # -- characters psi of G restricting to chi on G' ---------------------

    @cached_property
    def value_field(self):
        return cyclotomic_field(lcm(self.e, self.Pgroup.exponent, 2))

    def psi_characters(self):
        """All characters of G whose restriction to G' is chi."""
        G = self.group
        M = G.exponent
        out = []
        for phi in self.Pgroup.characters():
            exps = []
            for i, n in enumerate(G.orders):
                g = [0] * G.rank
                g[i] = 1
                gprime, gp = self.split.split(tuple(g))
                k = Fraction(self.chi.value_exponent(gprime), self.chi.order) + Fraction(phi.value_exponent(gp), phi.order)
                k = k * M
                assert k.denominator == 1
                exps.append(int(k) * n // M)
            out.append(Character(G, exps))
        return out

    # -- derived settings -------------------------------------------------

    def quotient(self, J: Subgroup, level: IdealIndex) -> "ArithmeticSetting":
        """The setting of the fixed field H^J with modulus ``level``; (★) is re-checked."""
        if not J <= Subgroup(self.group, [self.split.embed_p(g) for g in self.Pgroup.generators()]):
            raise SettingError("only p-subgroups are quotiented out")
        q = self.group.quotient(J)
        T = q.target
        primes = []
        for v in self.primes.values():
            I = q.image_subgroup(v.inertia)
            ce = v.conductor_exponent if I.order > 1 else 0
            primes.append(SettingPrime(v.label, v.norm, I, q(v.frobenius), v.above_p, ce))
        split = T.p_split(self.p)
        exps = []
        for i, n in enumerate(split.Gprime.orders):
            h = [0] * split.Gprime.rank
            h[i] = 1
            g = q.lift(split.embed_prime(tuple(h)))
            k = self.chi.value_exponent(self.split.split(g)[0])
            exps.append(k * n // self.chi.order)
        return ArithmeticSetting(T, self.p, primes, level, self.degree, chi_exps=exps)

    def inertia_join(self, labels) -> Subgroup:
        J = self.group.trivial_subgroup()
        for v in labels:
            J = J.join(self.primes[v].inertia)
        return J

    # -- serialization ----------------------------------------------------

    def to_json(self):
        return {
            "group": self.group.to_json(),
            "p": self.p,
            "degree": self.degree,
            "chi": list(self.chi.exps),
            "primes": [
                {
                    "label": v.label,
                    "norm": str(v.norm),
                    "inertia": [list(g) for g in v.inertia.gens],
                    "frobenius": list(v.frobenius),
                    "above_p": v.above_p,
                    "conductor_exponent": v.conductor_exponent,
                }
                for v in (self.primes[k] for k in self.labels)
            ],
            "level": self.level.to_json(),
        }

    @classmethod
    def from_json(cls, d):
        G = FiniteAbelianGroup.from_json(d["group"])
        primes = []
        for e in d["primes"]:
            I = Subgroup(G, [tuple(g) for g in e.get("inertia", [])])
            ce = int(e.get("conductor_exponent", 1 if I.order > 1 else 0))
            primes.append(SettingPrime(str(e["label"]), int(e["norm"]), I, G.reduce(tuple(e["frobenius"])), bool(e["above_p"]), ce))
        return cls(G, int(d["p"]), primes, IdealIndex.from_json(d["level"]), int(d.get("degree", 1)), chi_exps=d.get("chi"))


class FieldView:
    """The fixed field H^J of the inertia groups of a set of primes, seen from G.

    Elements of Q[G/J] are handled through lifts to Q[G]; every quantity
    built here is later multiplied by a norm element that kills the choice.
    """

    def __init__(self, setting: ArithmeticSetting, labels=frozenset()):
        self.setting = setting
        self.labels = frozenset(labels)
        self.J = setting.inertia_join(self.labels)
        self._inter = {}

    def meet_order(self, v) -> int:
        k = self._inter.get(v)
        if k is None:
            k = self.setting.primes[v].inertia.intersect(self.J).order
            self._inter[v] = k
        return k

    def inertia_order(self, v) -> int:
        return self.setting.primes[v].inertia.order // self.meet_order(v)

    def ramified(self, v) -> bool:
        return self.inertia_order(v) > 1

    def inertia_is_p_group(self, v) -> bool:
        return _is_p_power(self.inertia_order(v), self.setting.p)

    def nu_lift(self, v) -> GroupRingElement:
        """A lift of the norm element of the image of I_v in G/J."""
        s = self.setting
        return s.nu(s.primes[v].inertia) * Fraction(1, self.meet_order(v))
