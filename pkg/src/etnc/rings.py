"""Coefficient rings.

Every ring object exposes ``zero``, ``one``, ``coerce`` and a few
ring-specific helpers; elements support ``+ - *``, unary minus, ``==`` and
truthiness (nonzero).  Plain ``int`` and ``Fraction`` serve as elements of
``ZZ`` and ``QQ``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .arith import factorint, multiplicative_order


class PrecisionError(ArithmeticError):
    """Raised when a p-adic answer cannot be certified at the working precision."""


# ---------------------------------------------------------------------------
# Z and Q


class IntegerRing:
    name = "ZZ"
    zero = 0
    one = 1
    inverts_two = False
    exact = True

    def coerce(self, x):
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"{x} is not an integer")
            return int(x)
        return int(x)

    def __repr__(self):
        return "ZZ"


class RationalField:
    name = "QQ"
    zero = Fraction(0)
    one = Fraction(1)
    inverts_two = True
    exact = True

    def coerce(self, x):
        if isinstance(x, Cyc):
            return x.to_rational()
        return Fraction(x)

    def inverse(self, x):
        return 1 / Fraction(x)

    def __repr__(self):
        return "QQ"


ZZ = IntegerRing()
QQ = RationalField()


# ---------------------------------------------------------------------------
# integer polynomial helpers (lists, increasing degree)


def _trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def poly_mul(f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return out


def poly_divmod_monic(f, g, mod=None):
    """Divide f by monic g; coefficients reduced mod `mod` when given."""
    f = list(f)
    dg = len(g) - 1
    if len(f) <= dg:
        return [], f
    q = [0] * (len(f) - dg)
    for i in range(len(f) - 1, dg - 1, -1):
        c = f[i] if mod is None else f[i] % mod
        if c:
            q[i - dg] = c
            for j in range(dg + 1):
                f[i - dg + j] -= c * g[j]
    r = f[:dg]
    if mod is not None:
        r = [x % mod for x in r]
        q = [x % mod for x in q]
    return q, r


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Phi_n as integer coefficients, increasing degree."""
    f = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            f, r = poly_divmod_monic(f, list(cyclotomic_poly(d)))
            assert not any(r)
    return tuple(f)


# ---------------------------------------------------------------------------
# Q(zeta_n) on the power basis of Phi_n


class CyclotomicField:
    inverts_two = True
    exact = True

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("cyclotomic order must be positive")
        self.n = n
        self.phi = cyclotomic_poly(n)
        self.degree = len(self.phi) - 1
        self.name = f"Q(zeta_{n})"
        d = self.degree
        # x^j mod Phi_n for d <= j <= 2d - 2, used by multiplication
        self._red = {}
        cur = [0] * d
        if d:
            cur = [Fraction(-c) for c in self.phi[:d]]  # x^d
        for j in range(d, 2 * d - 1):
            self._red[j] = tuple(cur)
            # multiply by x
            top = cur[-1]
            cur = [Fraction(0)] + cur[:-1]
            if top:
                cur = [a - top * b for a, b in zip(cur, self.phi[:d])]
        self.zero = Cyc(self, (Fraction(0),) * d)
        self.one = self.from_rational(1)
        self._zeta_cache: dict[int, Cyc] = {}

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and other.n == self.n

    def __hash__(self):
        return hash(("cyc", self.n))

    def from_rational(self, q) -> "Cyc":
        if self.degree == 0:
            return Cyc(self, ())
        return Cyc(self, (Fraction(q),) + (Fraction(0),) * (self.degree - 1))

    def coerce(self, x) -> "Cyc":
        if isinstance(x, Cyc):
            if x.field.n == self.n:
                return x
            return self.embed(x)
        return self.from_rational(x)

    def zeta(self, k: int = 1) -> "Cyc":
        """zeta_n^k on the power basis."""
        k %= self.n
        z = self._zeta_cache.get(k)
        if z is None:
            vec = [0] * (k + 1)
            vec[k] = 1
            _, r = poly_divmod_monic(vec, list(self.phi))
            r = [Fraction(x) for x in r] + [Fraction(0)] * (self.degree - len(r))
            z = Cyc(self, tuple(r[: self.degree]))
            self._zeta_cache[k] = z
        return z

    def embed(self, x: "Cyc") -> "Cyc":
        """Image of x in Q(zeta_d) under zeta_d -> zeta_n^(n/d), for d | n."""
        d = x.field.n
        if self.n % d:
            raise ValueError(f"Q(zeta_{d}) does not embed in {self.name}")
        step = self.n // d
        out = self.zero
        for i, c in enumerate(x.c):
            if c:
                out = out + self.zeta(i * step) * c
        return out


class Cyc:
    __slots__ = ("field", "c")

    def __init__(self, field: CyclotomicField, c):
        self.field = field
        self.c = c

    def _other(self, o):
        if isinstance(o, Cyc):
            if o.field.n != self.field.n:
                raise ValueError("mixing elements of different cyclotomic fields")
            return o
        return self.field.from_rational(o)

    def __add__(self, o):
        o = self._other(o)
        return Cyc(self.field, tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __sub__(self, o):
        o = self._other(o)
        return Cyc(self.field, tuple(a - b for a, b in zip(self.c, o.c)))

    def __rsub__(self, o):
        return self._other(o) - self

    def __neg__(self):
        return Cyc(self.field, tuple(-a for a in self.c))

    def __mul__(self, o):
        if not isinstance(o, Cyc):
            o = Fraction(o)
            return Cyc(self.field, tuple(a * o for a in self.c))
        o = self._other(o)
        d = self.field.degree
        prod = [Fraction(0)] * max(2 * d - 1, 0)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    if b:
                        prod[i + j] += a * b
        out = prod[:d]
        red = self.field._red
        for j in range(d, 2 * d - 1):
            t = prod[j]
            if t:
                out = [x + t * y for x, y in zip(out, red[j])]
        return Cyc(self.field, tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, o):
        if isinstance(o, Cyc):
            return self * o.inverse()
        return self * (1 / Fraction(o))

    def __rtruediv__(self, o):
        return self._other(o) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.field.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, o):
        if isinstance(o, Cyc):
            return o.field.n == self.field.n and o.c == self.c
        try:
            return self.c == self.field.from_rational(o).c
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.field.n, self.c))

    def __bool__(self):
        return any(self.c)

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.c[0] if self.c else Fraction(0)

    def inverse(self) -> "Cyc":
        if not self:
            raise ZeroDivisionError("inverse of zero")
        d = self.field.degree
        # columns: self * x^j
        cols = []
        basis = [self.field.zeta(j) for j in range(d)]
        for b in basis:
            cols.append((self * b).c)
        M = [[cols[j][i] for j in range(d)] + [Fraction(int(i == 0))] for i in range(d)]
        for col in range(d):
            r = next(r for r in range(col, d) if M[r][col] != 0)
            M[col], M[r] = M[r], M[col]
            inv = 1 / M[col][col]
            M[col] = [x * inv for x in M[col]]
            for r in range(d):
                if r != col and M[r][col] != 0:
                    f = M[r][col]
                    M[r] = [a - f * b for a, b in zip(M[r], M[col])]
        return Cyc(self.field, tuple(M[i][d] for i in range(d)))

    def conj(self) -> "Cyc":
        """Complex conjugation zeta -> zeta^{-1}."""
        out = self.field.zero
        for i, c in enumerate(self.c):
            if c:
                out = out + self.field.zeta(-i) * c
        return out

    def __repr__(self):
        if self.is_rational():
            return str(self.to_rational())
        terms = []
        for i, c in enumerate(self.c):
            if c:
                mon = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
                terms.append(f"{c}{'*' + mon if mon else ''}")
        return " + ".join(terms) if terms else "0"


@lru_cache(maxsize=None)
def cyclotomic_field(n: int) -> CyclotomicField:
    return CyclotomicField(n)


# ---------------------------------------------------------------------------
# Z/p^N


def _valuation_int(x: int, p: int, N: int) -> int:
    if x == 0:
        return N
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


class IntegersModPN:
    """The precision ring Z/p^N."""

    exact = False

    def __init__(self, p: int, N: int):
        if p == 2:
            raise ValueError("the prime 2 is not supported")
        if factorint(p) != {p: 1}:
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.N = N
        self.modulus = p**N
        self.name = f"Z/{p}^{N}"
        self.inverts_two = True
        self.zero = ModPN(0, self)
        self.one = ModPN(1, self)
        self.residue_degree = 1

    def __repr__(self):
        return self.name

    def __eq__(self, o):
        return isinstance(o, IntegersModPN) and (o.p, o.N) == (self.p, self.N)

    def __hash__(self):
        return hash(("zpn", self.p, self.N))

    def coerce(self, x) -> "ModPN":
        if isinstance(x, ModPN):
            return x
        x = Fraction(x)
        if x.denominator % self.p == 0:
            raise ValueError(f"{x} is not {self.p}-integral")
        return ModPN(x.numerator * pow(x.denominator, -1, self.modulus) % self.modulus, self)

    def valuation(self, x: "ModPN") -> int:
        return _valuation_int(x.v, self.p, self.N)

    def is_unit(self, x) -> bool:
        return x.v % self.p != 0

    def inverse(self, x):
        if not self.is_unit(x):
            raise ZeroDivisionError("not a unit")
        return ModPN(pow(x.v, -1, self.modulus), self)

    def shift_down(self, x, v: int):
        """x / p^v for x divisible by p^v (any lift of the quotient)."""
        return ModPN(x.v // self.p**v, self)

    def p_power(self, v: int):
        return ModPN(pow(self.p, v, self.modulus), self)

    def to_json(self, x):
        return {"p": self.p, "N": self.N, "val": str(x.v)}


class ModPN:
    __slots__ = ("v", "R")

    def __init__(self, v: int, R: IntegersModPN):
        self.v = v
        self.R = R

    def _o(self, o):
        if isinstance(o, ModPN):
            return o.v
        return self.R.coerce(o).v

    def __add__(self, o):
        return ModPN((self.v + self._o(o)) % self.R.modulus, self.R)

    __radd__ = __add__

    def __sub__(self, o):
        return ModPN((self.v - self._o(o)) % self.R.modulus, self.R)

    def __rsub__(self, o):
        return ModPN((self._o(o) - self.v) % self.R.modulus, self.R)

    def __neg__(self):
        return ModPN(-self.v % self.R.modulus, self.R)

    def __mul__(self, o):
        return ModPN(self.v * self._o(o) % self.R.modulus, self.R)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            return self.R.inverse(self) ** (-k)
        return ModPN(pow(self.v, k, self.R.modulus), self.R)

    def __eq__(self, o):
        try:
            return self.v == self._o(o)
        except (ValueError, TypeError):
            return False

    def __hash__(self):
        return hash(self.v)

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"{self.v} (mod {self.R.p}^{self.R.N})"


# ---------------------------------------------------------------------------
# (Z/p^N)[x]/(f) with f a Hensel lift of an irreducible factor of Phi_e mod p


def _poly_mod_p_gcdex(a, b, p):
    """Extended gcd over F_p: returns (g, s, t) with s a + t b = g, g monic."""
    def norm(f):
        f = [x % p for x in f]
        return _trim(f)

    def divmod_p(f, g):
        f = norm(f)
        g = norm(g)
        inv = pow(g[-1], -1, p)
        q = [0] * max(len(f) - len(g) + 1, 0)
        while len(f) >= len(g) and f:
            c = f[-1] * inv % p
            k = len(f) - len(g)
            q[k] = c
            for j, gj in enumerate(g):
                f[k + j] = (f[k + j] - c * gj) % p
            f = _trim(f)
        return q, f

    def sub(f, g):
        n = max(len(f), len(g))
        return norm([(f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0) for i in range(n)])

    r0, r1 = norm(a), norm(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = divmod_p(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, norm(poly_mul(q, s1)))
        t0, t1 = t1, sub(t0, norm(poly_mul(q, t1)))
    inv = pow(r0[-1], -1, p)
    return ([x * inv % p for x in r0], [x * inv % p for x in s0], [x * inv % p for x in t0])


def _poly_sub(f, g, mod):
    n = max(len(f), len(g))
    return [((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % mod for i in range(n)]


def _poly_add(f, g, mod):
    n = max(len(f), len(g))
    return [((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)) % mod for i in range(n)]


def hensel_lift(F, g, h, p, N):
    """Lift F = g*h mod p (g, h monic, coprime mod p) to a factorization mod p^N.

    Quadratic lifting; returns (g_N, h_N) monic with F = g_N h_N mod p^N.
    """
    _, s, t = _poly_mod_p_gcdex(g, h, p)
    m = p
    g = [x % m for x in g]
    h = [x % m for x in h]
    target = p**N
    while m < target:
        m2 = min(m * m, target)
        e = _poly_sub(list(F), poly_mul(g, h), m2)
        # g* = g + t e mod g ; h* = h + s e mod h   (von zur Gathen-Gerhard 15.10 with roles)
        q, r = poly_divmod_monic(_trim([x % m2 for x in poly_mul(s, e)]) or [0], h, m2)
        g_new = _poly_add(g, _poly_add(poly_mul(t, e), poly_mul(q, g), m2), m2)
        h_new = _poly_add(h, r, m2)
        g_new = _trim(g_new)
        h_new = _trim(h_new)
        # keep g monic of the right degree
        g_new = g_new[: len(g)]
        b = _poly_sub(_poly_add(poly_mul(s, g_new), poly_mul(t, h_new), m2), [1], m2)
        c, d = poly_divmod_monic(_trim([x % m2 for x in poly_mul(s, b)]) or [0], h_new, m2)
        s = _trim(_poly_sub(s, d, m2)) or [0]
        t = _trim(_poly_sub(t, _poly_add(poly_mul(t, b), poly_mul(c, g_new), m2), m2)) or [0]
        g, h, m = g_new, h_new, m2
    return g, h


@lru_cache(maxsize=None)
def irreducible_factor_mod_p(e: int, p: int) -> tuple[int, ...]:
    """A canonical monic irreducible factor of Phi_e over F_p.

    The factorization itself comes from sympy; the factor of smallest
    coefficient vector (read from the top degree down) is chosen so that
    the choice is reproducible.
    """
    from sympy import Poly, symbols

    x = symbols("x")
    phi = cyclotomic_poly(e)
    P = Poly(list(reversed(phi)), x, modulus=p)
    _, facs = P.factor_list()
    cands = []
    for fac, mult in facs:
        coeffs = [int(c) % p for c in reversed(fac.all_coeffs())]
        lead_inv = pow(coeffs[-1], -1, p)
        coeffs = [c * lead_inv % p for c in coeffs]
        cands.append(tuple(coeffs))
    cands.sort(key=lambda f: (len(f), tuple(reversed(f))))
    f = cands[0]
    assert len(f) - 1 == (multiplicative_order(p, e) if e > 1 else 1)
    return f


class UnramifiedRing:
    """O/p^N with O = Z_p[zeta_e], realized as (Z/p^N)[x]/(f).

    ``f`` is the Hensel lift of a fixed irreducible factor of Phi_e mod p;
    the class of x is the chosen image of zeta_e.
    """

    exact = False
    inverts_two = True

    def __init__(self, p: int, N: int, e: int):
        if p == 2:
            raise ValueError("the prime 2 is not supported")
        if e % p == 0:
            raise ValueError("p divides the order of the root of unity")
        self.p = p
        self.N = N
        self.e = e
        self.modulus = p**N
        fbar = list(irreducible_factor_mod_p(e, p))
        phi = list(cyclotomic_poly(e))
        if len(fbar) == len(phi):
            f = [x % self.modulus for x in phi]
        else:
            cof, r = poly_divmod_monic([x % p for x in phi], fbar, p)
            assert not any(x % p for x in r)
            f, _ = hensel_lift(phi, fbar, _trim(cof), p, N)
        self.f = tuple(f)
        self.degree = len(f) - 1
        self.residue_degree = self.degree
        self.name = f"Z_{p}[zeta_{e}]/{p}^{N}"
        d = self.degree
        self.zero = UElem(self, (0,) * d)
        self.one = UElem(self, (1,) + (0,) * (d - 1))
        self._red = {}
        cur = [(-c) % self.modulus for c in self.f[:d]]
        for j in range(d, 2 * d - 1):
            self._red[j] = tuple(cur)
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [(a - top * b) % self.modulus for a, b in zip(cur, self.f[:d])]
        self._zeta = {}

    def __repr__(self):
        return self.name

    def __eq__(self, o):
        return isinstance(o, UnramifiedRing) and (o.p, o.N, o.e) == (self.p, self.N, self.e)

    def __hash__(self):
        return hash(("unram", self.p, self.N, self.e))

    def root_description(self) -> dict:
        return {"p": self.p, "N": self.N, "e": self.e, "f_mod_p": [c % self.p for c in self.f]}

    def coerce(self, x) -> "UElem":
        if isinstance(x, UElem):
            return x
        if isinstance(x, ModPN):
            x = x.v
        x = Fraction(x)
        if x.denominator % self.p == 0:
            raise ValueError(f"{x} is not {self.p}-integral")
        v = x.numerator * pow(x.denominator, -1, self.modulus) % self.modulus
        return UElem(self, (v,) + (0,) * (self.degree - 1))

    def zeta(self, k: int = 1) -> "UElem":
        k %= self.e
        z = self._zeta.get(k)
        if z is None:
            z = self.one
            x = UElem(self, (0, 1) + (0,) * (self.degree - 2)) if self.degree > 1 else UElem(self, ((-self.f[0]) % self.modulus,))
            for _ in range(k):
                z = z * x
            self._zeta[k] = z
        return z

    def from_cyc(self, z: Cyc) -> "UElem":
        """Image of an element of Q(zeta_n), n | e, under zeta_e -> x."""
        n = z.field.n
        if self.e % n:
            raise ValueError("field does not embed")
        out = self.zero
        step = self.e // n
        for i, c in enumerate(z.c):
            if c:
                out = out + self.zeta(i * step) * self.coerce(c)
        return out

    def valuation(self, x: "UElem") -> int:
        return min(_valuation_int(c, self.p, self.N) for c in x.c)

    def is_unit(self, x) -> bool:
        return any(c % self.p for c in x.c)

    def inverse(self, x: "UElem") -> "UElem":
        if not self.is_unit(x):
            raise ZeroDivisionError("not a unit")
        p = self.p
        # inverse mod p via extended gcd in F_p[x]/(fbar), then Newton
        fbar = [c % p for c in self.f]
        g, s, _ = _poly_mod_p_gcdex(list(x.c), fbar, p)
        assert g == [1]
        s = [c % p for c in s] + [0] * (self.degree - len(s))
        y = UElem(self, tuple(s[: self.degree]))
        two = self.coerce(2)
        prec = 1
        while prec < self.N:
            y = y * (two - x * y)
            prec *= 2
        assert x * y == self.one
        return y

    def shift_down(self, x, v: int):
        q = self.p**v
        return UElem(self, tuple(c // q for c in x.c))

    def p_power(self, v: int):
        return self.coerce(pow(self.p, v, self.modulus)) if v < self.N else self.zero

    def to_json(self, x):
        return {"p": self.p, "N": self.N, "val": [str(c) for c in x.c]}


class UElem:
    __slots__ = ("R", "c")

    def __init__(self, R: UnramifiedRing, c):
        self.R = R
        self.c = c

    def _o(self, o):
        if isinstance(o, UElem):
            return o
        return self.R.coerce(o)

    def __add__(self, o):
        o = self._o(o)
        m = self.R.modulus
        return UElem(self.R, tuple((a + b) % m for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __sub__(self, o):
        o = self._o(o)
        m = self.R.modulus
        return UElem(self.R, tuple((a - b) % m for a, b in zip(self.c, o.c)))

    def __rsub__(self, o):
        return self._o(o) - self

    def __neg__(self):
        m = self.R.modulus
        return UElem(self.R, tuple(-a % m for a in self.c))

    def __mul__(self, o):
        R = self.R
        m = R.modulus
        if not isinstance(o, UElem):
            if isinstance(o, int):
                return UElem(R, tuple(a * o % m for a in self.c))
            o = R.coerce(o)
        d = R.degree
        if d == 1:
            return UElem(R, (self.c[0] * o.c[0] % m,))
        prod = [0] * (2 * d - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    if b:
                        prod[i + j] += a * b
        out = prod[:d]
        for j in range(d, 2 * d - 1):
            t = prod[j]
            if t:
                out = [x + t * y for x, y in zip(out, R._red[j])]
        return UElem(R, tuple(x % m for x in out))

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            return self.R.inverse(self) ** (-k)
        out = self.R.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, o):
        try:
            o = self._o(o)
        except (ValueError, TypeError):
            return False
        return self.c == o.c

    def __hash__(self):
        return hash(self.c)

    def __bool__(self):
        return any(self.c)

    def __repr__(self):
        return f"UElem{self.c}"


@lru_cache(maxsize=None)
def unramified_ring(p: int, N: int, e: int) -> UnramifiedRing:
    return UnramifiedRing(p, N, e)


@lru_cache(maxsize=None)
def integers_mod(p: int, N: int) -> IntegersModPN:
    return IntegersModPN(p, N)


def ring_valuation(R, x) -> float | int:
    """p-adic valuation for precision rings; for QQ/Cyc use the coefficient minimum."""
    if isinstance(R, (IntegersModPN, UnramifiedRing)):
        return R.valuation(x)
    raise TypeError("valuation needs a p-adic ring")
