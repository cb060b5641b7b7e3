"""Matrices over commutative rings.

Matrices are lists of rows.  Elements only need ``+ - *`` and truthiness;
``zero``/``one`` are passed explicitly so the same code runs over Z, Q,
cyclotomic fields, precision rings and group rings.
"""

from __future__ import annotations


def mat_mul(A, B, zero):
    n, k = len(A), len(B)
    m = len(B[0]) if B else 0
    out = []
    for i in range(n):
        row = []
        Ai = A[i]
        for j in range(m):
            s = zero
            for t in range(k):
                a = Ai[t]
                if a:
                    b = B[t][j]
                    if b:
                        s = s + a * b
            row.append(s)
        out.append(row)
    return out


def mat_vec(A, v, zero):
    out = []
    for row in A:
        s = zero
        for a, b in zip(row, v):
            if a and b:
                s = s + a * b
        out.append(s)
    return out


def identity(n, zero, one):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def transpose(A):
    return [list(r) for r in zip(*A)]


def charpoly(A, zero, one):
    """Coefficients [1, c_1, ..., c_n] of det(t I - A), division free (Berkowitz)."""
    n = len(A)
    if n == 0:
        return [one]
    vect = [one, -A[0][0]]
    for r in range(1, n):
        C = [A[i][r] for i in range(r)]
        R = [A[r][j] for j in range(r)]
        Ar = [row[:r] for row in A[:r]]
        col = [one, -A[r][r]]
        Ck = C
        for _ in range(r):
            s = zero
            for a, b in zip(R, Ck):
                if a and b:
                    s = s + a * b
            col.append(-s)
            Ck = mat_vec(Ar, Ck, zero)
        new = []
        for i in range(r + 2):
            s = zero
            for j in range(min(i, r) + 1):
                a = col[i - j]
                b = vect[j]
                if a and b:
                    s = s + a * b
            new.append(s)
        vect = new
    return vect


def det(A, zero, one):
    n = len(A)
    if n == 0:
        return one
    if n == 1:
        return A[0][0]
    if n == 2:
        return A[0][0] * A[1][1] - A[0][1] * A[1][0]
    c = charpoly(A, zero, one)[-1]
    return c if n % 2 == 0 else -c


def det_laplace(A, zero, one):
    """Cofactor expansion along the first row; an independent check of ``det``."""
    n = len(A)
    if n == 0:
        return one
    if n == 1:
        return A[0][0]
    s = zero
    for j in range(n):
        if not A[0][j]:
            continue
        minor = [row[:j] + row[j + 1 :] for row in A[1:]]
        t = A[0][j] * det_laplace(minor, zero, one)
        s = s + t if j % 2 == 0 else s - t
    return s


def adjugate(A, zero, one):
    """adj(A) with A adj(A) = det(A) I, via Cayley-Hamilton."""
    n = len(A)
    if n == 0:
        return []
    if n == 1:
        return [[one]]
    c = charpoly(A, zero, one)
    # adj = (-1)^(n-1) (A^{n-1} + c_1 A^{n-2} + ... + c_{n-1} I)
    acc = identity(n, zero, one)
    for k in range(1, n):
        acc = mat_mul(A, acc, zero)
        for i in range(n):
            acc[i][i] = acc[i][i] + c[k]
    if n % 2 == 0:
        acc = [[-x for x in row] for row in acc]
    return acc


# ---------------------------------------------------------------------------
# fields


def field_solve(A, b, zero, one):
    """A particular solution x of A x = b over a field, or None."""
    n = len(A)
    m = len(A[0]) if n else 0
    M = [list(A[i]) + [b[i]] for i in range(n)]
    pivots = []
    r = 0
    for col in range(m):
        piv = next((i for i in range(r, n) if M[i][col]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = one / M[r][col]
        M[r] = [x * inv for x in M[r]]
        for i in range(n):
            if i != r and M[i][col]:
                f = M[i][col]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(col)
        r += 1
        if r == n:
            break
    for i in range(r, n):
        if M[i][m]:
            return None
    x = [zero] * m
    for i, col in enumerate(pivots):
        x[col] = M[i][m]
    return x


def field_rank(A, one):
    n = len(A)
    if not n:
        return 0
    M = [list(r) for r in A]
    m = len(M[0])
    r = 0
    for col in range(m):
        piv = next((i for i in range(r, n) if M[i][col]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = one / M[r][col]
        M[r] = [x * inv for x in M[r]]
        for i in range(r + 1, n):
            if M[i][col]:
                f = M[i][col]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        r += 1
    return r


def field_nullspace(A, zero, one):
    """Basis of {x : A x = 0} over a field."""
    n = len(A)
    m = len(A[0]) if n else 0
    M = [list(r) for r in A]
    pivots = []
    r = 0
    for col in range(m):
        piv = next((i for i in range(r, n) if M[i][col]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = one / M[r][col]
        M[r] = [x * inv for x in M[r]]
        for i in range(n):
            if i != r and M[i][col]:
                f = M[i][col]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(m) if c not in pivots]
    basis = []
    for fcol in free:
        v = [zero] * m
        v[fcol] = one
        for i, pc in enumerate(pivots):
            v[pc] = -M[i][fcol]
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# chain rings Z/p^N and O/p^N


class ChainSNF:
    """Smith form U A V = D over a precision chain ring.

    ``invariants`` holds the valuations of the diagonal (N stands for an
    entry that is zero at the working precision).  ``precision_loss`` is set
    when such entries occur.
    """

    def __init__(self, A, R, transforms=False):
        self.R = R
        n = len(A)
        m = len(A[0]) if n else 0
        self.shape = (n, m)
        D = [list(r) for r in A]
        zero, one = R.zero, R.one
        U = identity(n, zero, one) if transforms else None
        V = identity(m, zero, one) if transforms else None
        val = R.valuation
        N = R.N
        t = 0
        diag = []
        while t < min(n, m):
            best, bv = None, N
            for i in range(t, n):
                row = D[i]
                for j in range(t, m):
                    x = row[j]
                    if x:
                        v = val(x)
                        if v < bv:
                            best, bv = (i, j), v
                            if v == 0:
                                break
                if bv == 0 and best is not None:
                    break
            if best is None:
                break
            i0, j0 = best
            D[t], D[i0] = D[i0], D[t]
            if transforms:
                U[t], U[i0] = U[i0], U[t]
            if j0 != t:
                for row in D:
                    row[t], row[j0] = row[j0], row[t]
                if transforms:
                    for row in V:
                        row[t], row[j0] = row[j0], row[t]
            piv = D[t][t]
            # piv = p^bv * u ; normalize the pivot row to p^bv
            u = R.shift_down(piv, bv)
            uinv = R.inverse(u)
            D[t] = [x * uinv for x in D[t]]
            if transforms:
                U[t] = [x * uinv for x in U[t]]
            for i in range(t + 1, n):
                x = D[i][t]
                if x:
                    q = R.shift_down(x, bv)
                    D[i] = [a - q * b for a, b in zip(D[i], D[t])]
                    if transforms:
                        U[i] = [a - q * b for a, b in zip(U[i], U[t])]
            for j in range(t + 1, m):
                x = D[t][j]
                if x:
                    q = R.shift_down(x, bv)
                    for row in D:
                        row[j] = row[j] - q * row[t]
                    if transforms:
                        for row in V:
                            row[j] = row[j] - q * row[t]
            diag.append(bv)
            t += 1
        self.rank = t
        self.invariants = diag + [N] * (min(n, m) - t)
        self.precision_loss = len(diag) < min(n, m)
        self.D = D
        self.U = U
        self.V = V

    def length(self) -> int:
        """Sum of invariants, i.e. log_p of the cokernel order over O (times residue degree outside)."""
        return sum(self.invariants) + (self.R.N * (self.shape[0] - min(self.shape)))


def chain_solve(A, b, R):
    """A solution x of A x = b over a chain ring, or None if none exists."""
    n = len(A)
    m = len(A[0]) if n else 0
    if m == 0:
        return [] if all(not x for x in b) else None
    S = ChainSNF(A, R, transforms=True)
    Ub = mat_vec(S.U, b, R.zero)
    z = [R.zero] * m
    for i in range(n):
        if i < S.rank:
            v = S.invariants[i]
            if Ub[i] and R.valuation(Ub[i]) < v:
                return None
            z[i] = R.shift_down(Ub[i], v) if Ub[i] else R.zero
        elif Ub[i]:
            return None
    x = mat_vec(S.V, z, R.zero)
    assert all(not (u - w) for u, w in zip(mat_vec(A, x, R.zero), b))
    return x
