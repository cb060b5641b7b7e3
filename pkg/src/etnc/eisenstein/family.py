"""The finite span of weight-one series W_1^{H^Q}(Psi_m, 1) on which U_p acts.

A family vector is a dict  (Q, S) -> coefficient in Q[G], standing for
sum coefficient * W_1^{H^Q}(Psi_m, 1) where S is the prime support of m.
Coefficients attached to (Q, S) are always multiples of nu_Q, so lifts of
elements of Q[G/I_Q] are harmless.
"""

from fractions import Fraction
from itertools import combinations

from ..group_ring import GroupRing
from ..linalg import field_rank, mat_mul
from ..rings import unramified_ring
from .expansions import DEFAULT_BOUND, engine
from .setting import SettingError


class FamilyError(ValueError):
    """The family span is not independent at the working bound."""


def _add(vec, key, c):
    if not c:
        return
    cur = vec.get(key)
    s = c if cur is None else cur + c
    if s:
        vec[key] = s
    else:
        vec.pop(key, None)


def scale(vec, x):
    out = {}
    for k, c in vec.items():
        _add(out, k, c * x)
    return out


def add(u, v):
    out = dict(u)
    for k, c in v.items():
        _add(out, k, c)
    return out


def olW_vector(setting, S, hall=None):
    """W̄_1(Psi_n, 1) as a family vector; S is the support of n."""
    hall = sorted(setting.P_ba.support if hall is None else hall)
    vec = {}
    for r in range(len(hall) + 1):
        for Q in combinations(hall, r):
            nu = setting.QG.one()
            for v in Q:
                nu = nu * setting.nu(setting.primes[v].inertia)
            _add(vec, (frozenset(Q), frozenset(S) - frozenset(Q)), nu)
    return vec


def _psi(setting, Q, p):
    eng = engine(setting)
    if eng.view(Q).ramified(p):
        raise SettingError(f"U_{p}: {p} ramifies in H^Q")
    return setting.QG.basis(setting.frob(p))


def apply_U(setting, p, vec):
    """U_p on the span: U W(Psi_m) = Psi_m(p) W(Psi_m) + W(Psi_{pm})."""
    out = {}
    for (Q, S), c in vec.items():
        if p in S:
            _add(out, (Q, S), c)
        else:
            _add(out, (Q, S), c * _psi(setting, Q, p))
            _add(out, (Q, S | {p}), c)
    return out


def apply_U_inverse(setting, p, vec):
    """U_p^{-1}: identity when p | m, else Psi(p)^{-1}(W(Psi_m) - W(Psi_{pm}))."""
    G = setting.group
    out = {}
    for (Q, S), c in vec.items():
        if p in S:
            _add(out, (Q, S), c)
        else:
            _psi(setting, Q, p)
            inv = setting.QG.basis(G.inv(setting.frob(p)))
            _add(out, (Q, S), c * inv)
            _add(out, (Q, S | {p}), -(c * inv))
    return out


def apply_T_minus(setting, p, vec):
    """(U_p - Psi(p)) on the span."""
    out = apply_U(setting, p, vec)
    return add(out, scale(vec, -setting.QG.basis(setting.frob(p))))


def coefficient(setting, vec, a):
    """c(a, vec) in Q[G]."""
    eng = engine(setting)
    out = setting.QG.zero()
    for (Q, S), c in vec.items():
        w = eng.W(Q, 1, S, frozenset(), a)
        if w:
            out = out + c * w
    return out


def expand(setting, vec, bound=DEFAULT_BOUND):
    from .expansions import QExpansion

    fn = lambda a: setting.project(coefficient(setting, vec, a))
    return QExpansion.from_function(setting, 1, setting.level, bound, fn, "family vector")


# ---------------------------------------------------------------------------
# matrix form of U_{p0}


def family_basis(setting, p0, S=None, hall=None):
    """Members {(Q, S_Q), (Q, S_Q + p0)}: Q || P_ba, S_Q the support of nP'/Q.

    Hall divisors Q with the same inertia group I_Q give proportional members
    (nu_Q is a rational multiple of the norm of I_Q), so only the first Q
    for each I_Q is kept.
    """
    if S is None:
        S = setting.level.support | setting.P_prime.support
    hall = sorted(setting.P_ba.support if hall is None else hall)
    basis = []
    seen = set()
    for r in range(len(hall) + 1):
        for Q in combinations(hall, r):
            Qs = frozenset(Q)
            J = setting.inertia_join(Qs)
            if (J, frozenset(S) - Qs) in seen:
                continue
            m = (Qs, frozenset(S) - Qs)
            seen.add((J, m[1]))
            basis.append(m)
            m2 = (Qs, m[1] | {p0})
            if (J, m2[1]) not in seen:
                seen.add((J, m2[1]))
                basis.append(m2)
    return basis


def canonical_coordinates(setting, basis, vec):
    """Coordinates of a family vector on the members nu_{I_Q} W^{H^Q}(Psi_m)."""
    rep = {}
    for Q, S in basis:
        rep.setdefault((setting.inertia_join(Q), S), (Q, S))
    index = {m: i for i, m in enumerate(basis)}
    coords = [setting.A.zero() for _ in basis]
    for (Q, S), c in vec.items():
        J = setting.inertia_join(Q)
        key = rep.get((J, S))
        if key is None:
            raise FamilyError(f"vector leaves the span at {(sorted(Q), sorted(S))}")
        r = Fraction(_norm_of(setting, Q).augmentation(), J.order)
        # c = nu_Q x and nu_Q = r nu_{I_Q}
        coords[index[key]] = coords[index[key]] + _relative_coordinate(setting, c, Q) * r
    return coords


def _relative_coordinate(setting, c, Q):
    """x with c = nu_Q x, read off for c a combination of translates of nu_Q."""
    nu = _norm_of(setting, Q)
    G = setting.group
    rest = c
    x = setting.QG.zero()
    lead = next(iter(nu.c))
    els = G.elements
    steps = 0
    while rest:
        i = next(iter(rest.c))
        shift = G.mul(els[i], G.inv(els[lead]))
        term = setting.QG.basis(shift, rest.c[i] / nu.c[lead])
        x = x + term
        rest = rest - term * nu
        steps += 1
        if steps > 4 * G.order:
            raise FamilyError("coefficient is not a multiple of nu_Q")
    return setting.project(x)


def _norm_of(setting, Q):
    nu = setting.QG.one()
    for v in Q:
        nu = nu * setting.nu(setting.primes[v].inertia)
    return nu


def check_independence(setting, basis, bound=DEFAULT_BOUND):
    """Q-rank of the nu_Q-weighted members, flattened over ideals and P."""
    rows = []
    for m in basis:
        vec = {m: _norm_of(setting, m[0])}
        row = []
        for a in setting.ideals(bound):
            x = setting.project(coefficient(setting, vec, a))
            for g in range(setting.Pgroup.order):
                c = x.c.get(g)
                row.extend(c.c if c is not None else [0] * setting.K.degree)
        rows.append(row)
    from fractions import Fraction

    rows = [[Fraction(x) for x in r] for r in rows]
    return field_rank(rows, Fraction(1)) == len(basis)


def family_U_action(setting, p0, S=None, hall=None, bound=DEFAULT_BOUND, check=True):
    """Matrix of U_{p0} on the family span (column j = image of member j) and its inverse.

    Entries are in K[P]; the inverse is read off from the U^{-1} formula and
    verified by multiplying out.
    """
    basis = family_basis(setting, p0, S, hall)
    if check and not check_independence(setting, basis, bound):
        raise FamilyError("family is not independent at this bound; increase it")
    index = {(setting.inertia_join(Q), S2): i for i, (Q, S2) in enumerate(basis)}
    A = setting.A
    n = len(basis)

    def matrix(op):
        # entries relative to the members; they act on nu_Q-multiples only
        M = [[A.zero() for _ in range(n)] for _ in range(n)]
        for j, m in enumerate(basis):
            img = op(setting, p0, {m: setting.QG.one()})
            for (Q, S2), c in img.items():
                i = index.get((setting.inertia_join(Q), S2))
                if i is None:
                    raise FamilyError(f"U_{p0} leaves the span at {(sorted(Q), sorted(S2))}")
                M[i][j] = M[i][j] + setting.project(c)
        return M

    U = matrix(apply_U)
    Uinv = matrix(apply_U_inverse)
    prod_ = mat_mul(U, Uinv, A.zero())
    ok = all(prod_[i][j] == (A.one() if i == j else A.zero()) for i in range(n) for j in range(n))
    return {"basis": basis, "U": U, "U_inverse": Uinv, "inverse_ok": ok}


# ---------------------------------------------------------------------------
# ordinary projector as a p-adic limit


def _mat_pow(M, k, zero, one):
    n = len(M)
    R = [[one if i == j else zero for j in range(n)] for i in range(n)]
    B = M
    while k:
        if k & 1:
            R = mat_mul(R, B, zero)
        B = mat_mul(B, B, zero)
        k >>= 1
    return R


def ordinary_limit(M, zero, one, max_n=400):
    """lim U^{n!}: iterate E_n = E_{n-1}^n until E is idempotent and stable."""
    E = M
    prev = None
    for n in range(2, max_n + 1):
        E = _mat_pow(E, n, zero, one)
        if prev is not None and E == prev and mat_mul(E, E, zero) == E:
            return E, n
        prev = E
    raise ArithmeticError("U^{n!} did not stabilise")


def ordinary_projector(setting, M, N=40):
    """e^ord on a block-diagonal (by Q) matrix over K[P], at p-adic precision N."""
    R = unramified_ring(setting.p, N, setting.e)
    PR = GroupRing(setting.Pgroup, R)
    zero, one = PR.zero(), PR.one()
    n = len(M)
    out = [[zero] * n for _ in range(n)]
    steps = 0
    # U is block diagonal; treat each connected block separately
    comp = list(range(n))

    def find(i):
        while comp[i] != i:
            i = comp[i]
        return i

    for i in range(n):
        for j in range(n):
            if M[i][j]:
                comp[find(i)] = find(j)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    for idx in groups.values():
        sub = [[setting.to_padic(M[i][j], N) for j in idx] for i in idx]
        E, k = ordinary_limit(sub, zero, one)
        steps = max(steps, k)
        for a, i in enumerate(idx):
            for b, j in enumerate(idx):
                out[i][j] = E[a][b]
    return out, steps
