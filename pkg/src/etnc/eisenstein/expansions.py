"""Truncated q-expansions with group-ring coefficients, and the Eisenstein
families E_k, W_k and W̄_1 built from the tautological character."""

from fractions import Fraction
from itertools import combinations

from ..group_ring import GroupRingElement
from .ideals import IdealIndex
from .setting import ArithmeticSetting, FieldView, SettingError

DEFAULT_BOUND = 60


class QExpansion:
    """Coefficients c(a) for every ideal a of norm at most ``bound``.

    Coefficients live in K[P], the chi-component of Q[G].
    """

    def __init__(self, setting: ArithmeticSetting, weight: int, level: IdealIndex, bound: int, coeffs: dict, label: str = ""):
        self.setting = setting
        self.weight = weight
        self.level = level
        self.bound = bound
        self.coeffs = coeffs
        self.label = label
        self.constant_terms = {}

    @classmethod
    def zero(cls, setting, weight, level, bound):
        return cls(setting, weight, level, bound, {}, "0")

    @classmethod
    def from_function(cls, setting, weight, level, bound, fn, label=""):
        coeffs = {}
        for a in setting.ideals(bound):
            c = fn(a)
            if c:
                coeffs[a] = c
        return cls(setting, weight, level, bound, coeffs, label)

    def ideals(self):
        return self.setting.ideals(self.bound)

    def coeff(self, a: IdealIndex) -> GroupRingElement:
        if self.setting.norm(a) > self.bound:
            raise KeyError(f"coefficient at {a} lies beyond the bound {self.bound}")
        return self.coeffs.get(a, self.setting.A.zero())

    def __repr__(self):
        return f"QExpansion({self.label or '?'}, k={self.weight}, level={self.level}, B={self.bound})"

    def _check(self, o):
        if o.setting is not self.setting:
            raise ValueError("expansions over different settings")
        if o.bound != self.bound:
            raise ValueError(f"bounds differ ({self.bound} vs {o.bound}); truncate first")

    def truncate(self, bound: int) -> "QExpansion":
        if bound > self.bound:
            raise ValueError("cannot extend a truncated expansion")
        norm = self.setting.norm
        out = {a: c for a, c in self.coeffs.items() if norm(a) <= bound}
        return QExpansion(self.setting, self.weight, self.level, bound, out, self.label)

    def __add__(self, o):
        self._check(o)
        out = dict(self.coeffs)
        for a, c in o.coeffs.items():
            s = out[a] + c if a in out else c
            if s:
                out[a] = s
            else:
                out.pop(a, None)
        return QExpansion(self.setting, self.weight, self.level.lcm(o.level), self.bound, out)

    def __neg__(self):
        return QExpansion(self.setting, self.weight, self.level, self.bound, {a: -c for a, c in self.coeffs.items()})

    def __sub__(self, o):
        return self + (-o)

    def scale(self, x) -> "QExpansion":
        """Multiply every coefficient by x (an element of K[P] or a rational)."""
        out = {}
        for a, c in self.coeffs.items():
            d = c * x
            if d:
                out[a] = d
        return QExpansion(self.setting, self.weight, self.level, self.bound, out)

    def __eq__(self, o):
        if not isinstance(o, QExpansion):
            return NotImplemented
        self._check(o)
        return self.mismatches(o) == []

    def mismatches(self, o) -> list:
        """Ideals (up to the common bound) where the two expansions differ."""
        B = min(self.bound, o.bound)
        zero = self.setting.A.zero()
        bad = []
        for a in self.setting.ideals(B):
            if self.coeffs.get(a, zero) != o.coeffs.get(a, zero):
                bad.append(a)
        return bad

    def agrees_with(self, o) -> bool:
        return not self.mismatches(o)

    def is_zero(self) -> bool:
        return not self.coeffs

    def dump(self) -> list:
        return [[repr(a), repr(self.coeffs[a])] for a in self.ideals() if a in self.coeffs]


# ---------------------------------------------------------------------------
# operators


def _prime_of(setting, l):
    if l not in setting.primes:
        raise KeyError(f"unknown prime {l}")
    return IdealIndex.prime(l)


def hecke_T(f: QExpansion, l: str) -> QExpansion:
    """c(a, T_l f) = c(la, f) + [l | a] Psi(l) N(l)^{k-1} c(a/l, f)."""
    s = f.setting
    if l in f.level.support:
        raise ValueError(f"T_{l} needs {l} prime to the level {f.level}")
    if s.primes[l].ramified:
        raise ValueError(f"{l} is ramified in H")
    lid = _prime_of(s, l)
    Nl = s.norms[l]
    B = f.bound // Nl
    nebentypus = s.proj(s.frob(l)) * Nl ** (f.weight - 1)
    out = {}
    for a in s.ideals(B):
        c = f.coeff(a * lid)
        if a.exponent(l):
            c = c + nebentypus * f.coeff(a / lid)
        if c:
            out[a] = c
    return QExpansion(s, f.weight, f.level, B, out, f"T_{l}({f.label})")


def hecke_U(f: QExpansion, l: str) -> QExpansion:
    """c(a, U_l f) = c(la, f)."""
    s = f.setting
    lid = _prime_of(s, l)
    B = f.bound // s.norms[l]
    out = {}
    for a in s.ideals(B):
        c = f.coeff(a * lid)
        if c:
            out[a] = c
    return QExpansion(s, f.weight, f.level.lcm(lid), B, out, f"U_{l}({f.label})")


def level_raise(f: QExpansion, m: IdealIndex) -> QExpansion:
    """c(a, f|_m) = [m | a] c(a/m, f)."""
    s = f.setting
    out = {}
    for a, c in f.coeffs.items():
        b = a * m
        if s.norm(b) <= f.bound:
            out[b] = c
    return QExpansion(s, f.weight, f.level * m, f.bound, out, f"{f.label}|{m}")


# ---------------------------------------------------------------------------
# coefficient engine


class CoefficientEngine:
    """Cached coefficients, in Q[G], of the Eisenstein families of a setting.

    ``labels`` names the primes Q whose inertia is divided out (the field
    H^Q); ``S`` is the prime support of the modulus of Psi; ``R`` the support
    of the auxiliary ideal.  Only supports matter for the coefficients.
    """

    def __init__(self, setting: ArithmeticSetting):
        self.s = setting
        self._views = {}
        self._eis = {}
        self._W = {}

    def view(self, labels) -> FieldView:
        labels = frozenset(labels)
        v = self._views.get(labels)
        if v is None:
            v = FieldView(self.s, labels)
            self._views[labels] = v
        return v

    def psi_element(self, view: FieldView, S, b: IdealIndex):
        """The group element Psi_n(b) of H^J (lifted to G), or None when it vanishes."""
        G = self.s.group
        g = G.identity
        for v, e in b.exps:
            if v in S:
                return None
            if view.ramified(v):
                raise SettingError(f"Psi evaluated at {v}, which ramifies in the field")
            g = G.mul(g, G.pow(self.s.frob(v), e))
        return g

    def eis(self, labels, k, S, R, a) -> GroupRingElement:
        """c(a, E_k(Psi_n, 1_R)) for the field H^labels."""
        key = (labels, k, S, R, a)
        out = self._eis.get(key)
        if out is not None:
            return out
        view = self.view(labels)
        acc = {}
        for r in a.divisors():
            if r.support & R:
                continue
            g = self.psi_element(view, S, a / r)
            if g is None:
                continue
            acc[g] = acc.get(g, 0) + self.s.norm(r) ** (k - 1)
        out = self.s.QG.from_dict(acc)
        self._eis[key] = out
        return out

    def modification_primes(self, labels, S):
        """Primes of n_p prime to p, for the field H^labels and modulus support S."""
        view = self.view(labels)
        return sorted(v for v in S if not self.s.primes[v].above_p and view.inertia_is_p_group(v))

    def W(self, labels, k, S, R, a) -> GroupRingElement:
        """c(a, W_k(Psi_n, 1_R)) for the field H^labels."""
        key = (labels, k, S, R, a)
        out = self._W.get(key)
        if out is not None:
            return out
        s = self.s
        view = self.view(labels)
        G = s.group
        QG = s.QG
        cand = [v for v in self.modification_primes(labels, S) if a.exponent(v)]
        out = QG.zero()
        for r in range(len(cand) + 1):
            for m in combinations(cand, r):
                factor = QG.one()
                scalar = Fraction(1)
                g = G.identity
                for v in m:
                    factor = factor * view.nu_lift(v)
                    g = G.mul(g, s.frob(v))
                    scalar *= Fraction(1 - s.norms[v] ** k, view.inertia_order(v))
                mid = IdealIndex.from_support(m)
                inner = self.eis(labels | frozenset(m), k, S - frozenset(m), R, a / mid)
                if inner:
                    out = out + factor * QG.basis(g) * inner * scalar
        self._W[key] = out
        return out

    def olW(self, S, a, hall) -> GroupRingElement:
        """c(a, W̄_1(Psi_n, 1)): sum over Q || P_ba of nu_Q W_1^{H^Q}(Psi_{n/Q}, 1)."""
        s = self.s
        out = s.QG.zero()
        hall = sorted(hall)
        for r in range(len(hall) + 1):
            for Q in combinations(hall, r):
                Qs = frozenset(Q)
                nu = s.QG.one()
                for v in Q:
                    nu = nu * s.nu(s.primes[v].inertia)
                out = out + nu * self.W(Qs, 1, S - Qs, frozenset(), a)
        return out


def engine(setting: ArithmeticSetting) -> CoefficientEngine:
    e = setting.__dict__.get("_engine")
    if e is None:
        e = CoefficientEngine(setting)
        setting.__dict__["_engine"] = e
    return e


def _support(x, default=frozenset()):
    if x is None:
        return frozenset(default)
    if isinstance(x, IdealIndex):
        return x.support
    return frozenset(x)


def _check_p_integral(x: GroupRingElement, p: int, what: str):
    for c in x.c.values():
        if Fraction(c).denominator % p == 0:
            raise SettingError(f"{what} has a coefficient that is not {p}-integral")


def _prepare(setting, k, modulus, R):
    if k < 1 or k % 2 == 0:
        raise ValueError("the weight must be odd and positive")
    n = setting.level if modulus is None else modulus
    R = IdealIndex() if R is None else R
    if not n.coprime(R):
        raise ValueError(f"modulus {n} and R = {R} are not coprime")
    if not setting.conductor.support <= n.support:
        raise ValueError("the modulus must be divisible by every ramified prime")
    return n, R


def eisenstein_series(setting, k: int, modulus=None, R=None, bound: int = DEFAULT_BOUND) -> QExpansion:
    """E_k(Psi_n, 1_R): c(a) = sum over r | a, (r, R) = 1 of Psi_n(a/r) N(r)^{k-1}."""
    n, R = _prepare(setting, k, modulus, R)
    eng = engine(setting)
    S, Rs = n.support, R.support
    fn = lambda a: setting.project(eng.eis(frozenset(), k, S, Rs, a))
    return QExpansion.from_function(setting, k, n * R, bound, fn, f"E_{k}(Psi_{n},1_{R})")


def modified_W_k(setting, k: int, modulus=None, R=None, bound: int = DEFAULT_BOUND) -> QExpansion:
    """W_k(Psi_n, 1_R)^chi, the sum over m | n_p with (m, p) = 1."""
    n, R = _prepare(setting, k, modulus, R)
    eng = engine(setting)
    S, Rs = n.support, R.support

    def fn(a):
        x = eng.W(frozenset(), k, S, Rs, a)
        _check_p_integral(x, setting.p, f"c({a}, W_{k})")
        return setting.project(x)

    return QExpansion.from_function(setting, k, n * R, bound, fn, f"W_{k}(Psi_{n},1_{R})")


def modified_olW1(setting, modulus=None, hall=None, bound: int = DEFAULT_BOUND) -> QExpansion:
    """W̄_1(Psi_n, 1)^chi; ``hall`` defaults to the primes of P_ba."""
    n, _ = _prepare(setting, 1, modulus, None)
    eng = engine(setting)
    H = _support(hall, setting.P_ba.support)
    S = n.support
    if not H <= S:
        raise ValueError("the Hall divisor must divide the modulus")
    fn = lambda a: setting.project(eng.olW(S, a, H))
    return QExpansion.from_function(setting, 1, n, bound, fn, f"olW_1(Psi_{n})")
