"""Coefficients of W̄_1 at square-free divisors of P_ba and the determinant
identity for the operator t built from U_p^{-1} on the family span."""

import random
from fractions import Fraction
from itertools import combinations

from ..group_ring import try_invert
from ..linalg import det, det_laplace
from .family import apply_T_minus, apply_U_inverse, coefficient, olW_vector, scale, add
from .ideals import IdealIndex


def _nu(s, v):
    return s.nu(s.primes[v].inertia)


def _frob(s, v, power=1):
    return s.QG.basis(s.group.pow(s.frob(v), power))


def squarefree_divisors(ideal):
    labels = sorted(ideal.support)
    for r in range(len(labels) + 1):
        for c in combinations(labels, r):
            yield IdealIndex.from_support(c)


def base_support(s):
    """Support of n P'."""
    return s.level.support | s.P_prime.support


def tw1_coeff_a(s, a):
    """prod over p | P_ba of (1 + nu_{I_p}(1 + [p | a] Psi(p))), in Q[G]."""
    out = s.QG.one()
    for v in sorted(s.P_ba.support):
        inner = s.QG.one() + (_frob(s, v) if a.exponent(v) else s.QG.zero())
        out = out * (s.QG.one() + _nu(s, v) * inner)
    return out


def C_factor(s, v, a):
    """C_p^a = nu(1 - #I Psi^{-1} - Psi^{-1})(1 + d Psi) / (1 + #I (1 + d Psi)) in K[P]."""
    A = s.A
    nu = s.project(_nu(s, v))
    e = s.primes[v].inertia.order
    psi = s.project(_frob(s, v))
    psi_inv = s.project(_frob(s, v, -1))
    d = psi if a.exponent(v) else A.zero()
    num = nu * (A.one() - psi_inv * e - psi_inv) * (A.one() + d)
    den = A.one() + (A.one() + d) * e
    inv = try_invert(den)
    if inv is None:
        raise ArithmeticError("1 + #I(1 + d Psi) is not invertible")
    return num * inv


def op_factor(s, v, vec):
    """(1 - nu_{I_p} Psi(p)^{-1} - U_p^{-1}) applied to a family vector."""
    c = s.QG.one() - _nu(s, v) * _frob(s, v, -1)
    return add(scale(vec, c), scale(apply_U_inverse(s, v, vec), -s.QG.one()))


def check_tw1_coeff(s, P0=None):
    """Lemma (a) for every square-free a | P_ba and (b) for every P0 | P_ba."""
    S = base_support(s)
    vec = olW_vector(s, S)
    out = {"a": True, "b": True, "cases": 0}
    subsets = [P0] if P0 is not None else list(squarefree_divisors(s.P_ba))
    for a in squarefree_divisors(s.P_ba):
        c_vec = s.project(coefficient(s, vec, a))
        if c_vec != s.project(tw1_coeff_a(s, a)):
            out["a"] = False
        for Pz in subsets:
            w = vec
            for v in sorted(Pz.support):
                w = op_factor(s, v, w)
            lhs = s.project(coefficient(s, w, a))
            rhs = c_vec
            for v in sorted(Pz.support):
                rhs = rhs * C_factor(s, v, a)
            out["cases"] += 1
            if lhs != rhs:
                out["b"] = False
    return out


# ---------------------------------------------------------------------------
# the determinant identity for W̄_1 coefficients


def random_small(s, rng, terms=2, size=2):
    """A small integral element of Q[G]."""
    QG = s.QG
    x = QG.zero()
    for _ in range(terms):
        x = x + QG.basis(rng.choice(s.group.elements), rng.randint(-size, size))
    return x


def v_entry(s, v, a, u, alpha):
    """(1 + nu(1 + d Psi)) u - alpha nu (1 - #I Psi^{-1} - Psi^{-1})(1 + d Psi)."""
    QG = s.QG
    nu = _nu(s, v)
    e = s.primes[v].inertia.order
    psi = _frob(s, v)
    psi_inv = _frob(s, v, -1)
    d = psi if a.exponent(v) else QG.zero()
    return (QG.one() + nu * (QG.one() + d)) * u - alpha * nu * (QG.one() - psi_inv * e - psi_inv) * (QG.one() + d)


def t_determinant_identity(s, Z, u, alpha, a):
    """Compare c(a, t W̄_1(Psi_n, 1)) with det(Z | (v^a_il)).

    Z is D x (D - s) and u, alpha are D x s over Q[G], s = #P_ba and
    D = r + n' + s with r = #P'.  The left side applies
    t = prod_j (U_{p'_j} - Psi(p'_j)) det(Z | u - alpha(1 - nu Psi^{-1} - U^{-1}))
    to W̄_1(Psi_n) on the family span; the determinant is expanded
    multilinearly in the operator columns.
    """
    QG = s.QG
    pl = sorted(s.P_ba.support)
    pj = sorted(s.P_prime.support)
    D = len(Z)
    ns = len(pl)
    report = {}
    # Prod (U_{p'} - Psi(p')) W̄_1(Psi_n) = W̄_1(Psi_{nP'})
    vec = olW_vector(s, s.level.support)
    for v in pj:
        vec = apply_T_minus(s, v, vec)
    report["raise_to_nP'"] = vec == olW_vector(s, base_support(s))
    # constant and operator parts of the last s columns
    const = [[u[i][l] - alpha[i][l] * (QG.one() - _nu(s, pl[l]) * _frob(s, pl[l], -1)) for l in range(ns)] for i in range(D)]
    lhs_vec = {}
    for r in range(ns + 1):
        for chosen in combinations(range(ns), r):
            M = [list(Z[i]) + [alpha[i][l] if l in chosen else const[i][l] for l in range(ns)] for i in range(D)]
            d = det(M, QG.zero(), QG.one()) if D else QG.one()
            if not d:
                continue
            w = vec
            for l in chosen:
                w = apply_U_inverse(s, pl[l], w)
            lhs_vec = add(lhs_vec, scale(w, d))
    lhs = s.project(coefficient(s, lhs_vec, a))
    V = [list(Z[i]) + [v_entry(s, pl[l], a, u[i][l], alpha[i][l]) for l in range(ns)] for i in range(D)]
    rhs_b = det(V, QG.zero(), QG.one()) if D else QG.one()
    rhs_l = det_laplace(V, QG.zero(), QG.one()) if D else QG.one()
    rhs = s.project(rhs_b)
    report["dets_agree"] = rhs_b == rhs_l
    report["identity"] = lhs == rhs
    # induction identity for l' with p_{l'} not dividing a
    ind = True
    for l in range(ns):
        v = pl[l]
        if a.exponent(v):
            continue
        pa = a * IdealIndex.prime(v)
        psi = _frob(s, v)
        for i in range(D):
            left = (QG.one() + psi) * v_entry(s, v, a, u[i][l], alpha[i][l]) - v_entry(s, v, pa, u[i][l], alpha[i][l])
            if s.project(left) != s.project(psi * u[i][l]):
                ind = False
    report["induction"] = ind
    report["lhs"] = lhs
    report["rhs"] = rhs
    return report


def random_t_instance(s, rng, max_size=3):
    """Random (Z, u, alpha, a) with D = r + n' + s <= max_size (None if impossible)."""
    ns = len(s.P_ba.support)
    r = len(s.P_prime.support)
    if r + ns > max_size:
        return None
    extra = rng.randint(0, max_size - r - ns)
    D = r + extra + ns
    Z = [[random_small(s, rng) for _ in range(D - ns)] for _ in range(D)]
    u = [[random_small(s, rng) for _ in range(ns)] for _ in range(D)]
    alpha = [[random_small(s, rng) for _ in range(ns)] for _ in range(D)]
    divs = list(squarefree_divisors(s.P_ba))
    a = rng.choice(divs)
    return Z, u, alpha, a
