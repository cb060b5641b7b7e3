"""Random instances for the verification suites and the tests."""

from __future__ import annotations

import hashlib
import random

from .arith import factorint
from .groups import FiniteAbelianGroup, Subgroup
from .stickelberger import CyclotomicExtension, PlaceData

# cyclic orders and a complex conjugation of order 2
CM_SHAPES = [
    ((2,), (1,)),
    ((4,), (2,)),
    ((6,), (3,)),
    ((8,), (4,)),
    ((10,), (5,)),
    ((12,), (6,)),
    ((2, 2), (1, 0)),
    ((2, 3), (1, 0)),
    ((2, 9), (1, 0)),
    ((6, 3), (3, 0)),
    ((4, 5), (2, 0)),
    ((2, 2), (1, 1)),
]


def case_rng(seed, *labels) -> random.Random:
    """Counter-based stream: the same (seed, labels) always gives the same generator."""
    key = ":".join(str(x) for x in (seed,) + labels)
    return random.Random(int.from_bytes(hashlib.sha256(key.encode()).digest()[:8], "big"))


def random_cm_group(rng, max_order=24) -> FiniteAbelianGroup:
    shapes = [s for s in CM_SHAPES if _prod(s[0]) <= max_order]
    orders, c = rng.choice(shapes)
    return FiniteAbelianGroup(orders, c)


def _prod(xs):
    out = 1
    for x in xs:
        out *= x
    return out


def random_subgroup(rng, G, max_gens=2) -> Subgroup:
    return G.subgroup([rng.choice(G.elements) for _ in range(rng.randint(0, max_gens))])


def random_place(rng, G=None, label="v", norm=7) -> PlaceData:
    G = G or random_cm_group(rng)
    return PlaceData(label, norm, random_subgroup(rng, G), rng.choice(G.elements))


def valid_moduli(limit=60):
    return [m for m in range(3, limit + 1) if m % 4 != 2]


def random_extension(rng, max_m=60, max_order=None) -> CyclotomicExtension:
    """Q(zeta_m)^N for a random m <= max_m and a random N not containing c."""
    while True:
        m = rng.choice(valid_moduli(max_m))
        units = CyclotomicExtension(m).full_group
        N = random_subgroup(rng, units, 1)
        if units.c in N.elements:
            continue
        ext = CyclotomicExtension(m, N=N)
        if max_order is None or ext.group.order <= max_order:
            return ext


def random_quotient(rng, ext: CyclotomicExtension):
    """A cyclic subgroup S of G with c not in S, so that H^S is CM (trivial as a fallback)."""
    G = ext.group
    options = [g for g in G.elements if G.c not in G.subgroup([g]).elements]
    for _ in range(10):
        S = G.subgroup([rng.choice(options)])
        if G.c not in S.elements:
            return S
    return G.trivial_subgroup()


def sigma_sets(rng, ext: CyclotomicExtension, p=None):
    """Sigma = primes dividing m, Sigma' = one auxiliary tame prime."""
    from .stickelberger import auxiliary_prime

    sigma_f = sorted(factorint(ext.m))
    aux = auxiliary_prime(ext, p or 0, avoid=sigma_f)
    return sigma_f, [aux]


def random_decomposition_config(rng):
    """(G, p-adic places, p) with G = G' x P and random inertia and Frobenius."""
    p = rng.choice([3, 5])
    shapes = [((2,), (1,)), ((4,), (2,)), ((6,), (3,)), ((2, p), (1, 0)), ((2, p * p), (1, 0)),
              ((4, p), (2, 0)), ((6, p), (3, 0)), ((2, 2, p), (1, 0, 0)), ((2, 2), (1, 1))]
    orders, c = rng.choice(shapes)
    G = FiniteAbelianGroup(orders, c)
    pel = [g for g in G.elements if _is_power_of(G.element_order(g), p)]
    places = []
    for i in range(rng.randint(1, 3)):
        # p-group inertia half of the time, so that condition (i) often fails
        I = G.subgroup([rng.choice(pel)]) if rng.random() < 0.5 else random_subgroup(rng, G)
        frob = rng.choice(pel) if rng.random() < 0.5 else rng.choice(G.elements)
        places.append(PlaceData(f"p{i + 1}", p, I, frob, above_p=True))
    return G, places, p


def _is_power_of(n, p):
    while n % p == 0:
        n //= p
    return n == 1
