"""Small integer helpers: factoring, valuations, CRT, Bernoulli polynomials,
and Smith normal form over Z."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, gcd


def factorint(n: int) -> dict[int, int]:
    """Prime factorization by trial division (inputs here are small)."""
    if n < 1:
        raise ValueError("factorint expects a positive integer")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return factorint(n) == {n: 1}


def primes_up_to(n: int) -> list[int]:
    sieve = bytearray([1]) * (n + 1)
    sieve[:2] = b"\x00\x00"[: min(2, n + 1)]
    for i in range(2, int(n**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i in range(n + 1) if sieve[i]]


def divisors(n: int) -> list[int]:
    out = [1]
    for q, e in factorint(n).items():
        out = [d * q**k for d in out for k in range(e + 1)]
    return sorted(out)


def euler_phi(n: int) -> int:
    r = n
    for q in factorint(n):
        r = r // q * (q - 1)
    return r


def lcm(*xs: int) -> int:
    out = 1
    for x in xs:
        out = out * x // gcd(out, x)
    return out


def vp(x, p: int) -> float | int:
    """p-adic valuation of an int or Fraction; zero has valuation +inf."""
    x = Fraction(x)
    if x == 0:
        return float("inf")
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def crt(residues: list[int], moduli: list[int]) -> int:
    x, m = 0, 1
    for r, n in zip(residues, moduli):
        g = gcd(m, n)
        if (r - x) % g:
            raise ValueError("inconsistent congruences")
        t = ((r - x) // g * pow(m // g, -1, n // g)) % (n // g)
        x += m * t
        m = m * n // g
        x %= m
    return x


def primitive_root(q: int) -> int:
    """Least primitive root modulo an odd prime power q."""
    (ell, e), = factorint(q).items()
    phi = q // ell * (ell - 1)
    qs = list(factorint(phi))
    for g in range(2, q):
        if g % ell == 0:
            continue
        if all(pow(g, phi // r, q) != 1 for r in qs):
            return g
    raise ValueError(f"no primitive root mod {q}")


def multiplicative_order(a: int, n: int) -> int:
    if gcd(a, n) != 1:
        raise ValueError("not a unit")
    phi = euler_phi(n)
    order = phi
    for q, e in factorint(phi).items():
        for _ in range(e):
            if pow(a, order // q, n) == 1:
                order //= q
            else:
                break
    return order


def mobius(n: int) -> int:
    f = factorint(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


@lru_cache(maxsize=None)
def bernoulli_number(k: int) -> Fraction:
    """B_k with B_1 = -1/2, via sum_{j<=k} C(k+1, j) B_j = 0."""
    if k == 0:
        return Fraction(1)
    s = sum(comb(k + 1, j) * bernoulli_number(j) for j in range(k))
    return -s / (k + 1)


@lru_cache(maxsize=None)
def bernoulli_poly_coeffs(k: int) -> tuple[Fraction, ...]:
    """Coefficients of B_k(x) in increasing degree."""
    return tuple(comb(k, j) * bernoulli_number(k - j) for j in range(k + 1))


def bernoulli_poly(k: int, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(bernoulli_poly_coeffs(k)):
        acc = acc * x + c
    return acc


# ---------------------------------------------------------------------------
# Smith normal form over Z


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(A: list[list[int]]):
    """Return (U, D, V) with U*A*V = D diagonal, d_1 | d_2 | ..., d_i >= 0.

    U and V are unimodular. A is n x m given as a list of rows.
    """
    n = len(A)
    m = len(A[0]) if n else 0
    D = [list(map(int, row)) for row in A]
    U = _identity(n)
    V = _identity(m)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        if k:
            D[dst] = [a + k * b for a, b in zip(D[dst], D[src])]
            U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, k):
        if k:
            for row in D:
                row[dst] += k * row[src]
            for row in V:
                row[dst] += k * row[src]

    t = 0
    while t < min(n, m):
        # pick the smallest nonzero entry in the remaining block
        best = None
        for i in range(t, n):
            for j in range(t, m):
                if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            done = True
            piv = D[t][t]
            for i in range(t + 1, n):
                if D[i][t]:
                    q = D[i][t] // piv
                    add_row(i, t, -q)
                    if D[i][t]:
                        done = False
            for j in range(t + 1, m):
                if D[t][j]:
                    q = D[t][j] // piv
                    add_col(j, t, -q)
                    if D[t][j]:
                        done = False
            if done:
                # divisibility of the remaining block
                bad = None
                for i in range(t + 1, n):
                    for j in range(t + 1, m):
                        if D[i][j] % piv:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                add_row(t, bad, 1)
                continue
            # move a smaller remainder into the pivot position
            best = None
            for i in range(t, n):
                if D[i][t] and (best is None or abs(D[i][t]) < abs(D[best[0]][best[1]])):
                    best = (i, t)
            for j in range(t, m):
                if D[t][j] and (best is None or abs(D[t][j]) < abs(D[best[0]][best[1]])):
                    best = (t, j)
            swap_rows(t, best[0])
            swap_cols(t, best[1])
        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    return U, D, V


def elementary_divisors(A: list[list[int]]) -> list[int]:
    """Nonzero diagonal of the Smith form plus zeros for the free rank."""
    if not A or not A[0]:
        return []
    _, D, _ = smith_normal_form(A)
    return [D[i][i] for i in range(min(len(D), len(D[0])))]


def abelian_invariants(relations: list[list[int]], ngens: int) -> list[int]:
    """Invariants of Z^ngens / (column span of relations); 0 marks a free summand."""
    if not relations or not relations[0]:
        return [0] * ngens
    diag = elementary_divisors(relations)
    out = [d for d in diag if d != 1]
    out += [0] * (ngens - len(diag))
    return out


def int_matrix_mul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def int_matrix_inverse_unimodular(U):
    """Inverse of a unimodular integer matrix via exact rational elimination."""
    n = len(U)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(U)]
    for c in range(n):
        r = next(r for r in range(c, n) if M[r][c] != 0)
        M[c], M[r] = M[r], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    out = [[x for x in row[n:]] for row in M]
    if any(x.denominator != 1 for row in out for x in row):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in out]
