"""Random abstract settings for the fuzz suites."""

import random

from ..arith import primes_up_to
from ..groups import FiniteAbelianGroup, Subgroup
from .ideals import IdealIndex
from .setting import ArithmeticSetting, SettingPrime

# (|G'|, p-part orders) with |G| <= 24, per p
_SHAPES = {
    3: [(2, ()), (2, (3,)), (2, (9,)), (2, (3, 3)), (4, ()), (4, (3,)), (8, (3,)), (8, ()), (10, ())],
    5: [(2, ()), (2, (5,)), (4, (5,)), (4, ()), (6, ()), (12, ())],
}

_SMALL_PRIMES = primes_up_to(60)


def _group(e, pparts):
    orders = [e] + list(pparts)
    c = [e // 2] + [0] * len(pparts)
    return FiniteAbelianGroup(orders, c)


def _p_elements(G, p):
    return [g for g in G.elements if _p_power(G.element_order(g), p)]


def _p_power(n, p):
    while n % p == 0:
        n //= p
    return n == 1


def random_setting(rng: random.Random, p: int | None = None, max_primes: int = 4, want_p_ba: bool | None = None) -> ArithmeticSetting:
    """A random setting with at most ``max_primes`` primes, one of them an
    auxiliary unramified prime outside the level used for T_l."""
    if p is None:
        p = rng.choice([3, 5])
    e, pparts = rng.choice(_SHAPES[p])
    G = _group(e, pparts)
    pel = _p_elements(G, p)
    els = G.elements
    primes = []
    level = {}
    n_padic = rng.choice([1, 1, 2])
    n_other = rng.randint(0, max_primes - 1 - n_padic)
    if want_p_ba is None:
        want_p_ba = rng.random() < 0.6
    for i in range(n_padic):
        label = f"p{i + 1}"
        norm = p if rng.random() < 0.75 else p * p
        in_level = rng.random() < 0.8
        kind = rng.random()
        if want_p_ba and i == 1 and rng.random() < 0.5:
            # a second prime with p-group decomposition group, or a prime of P'
            in_level = rng.random() < 0.5
            I = Subgroup(G, [rng.choice(pel)]) if in_level else G.trivial_subgroup()
            frob = rng.choice(pel)
        elif want_p_ba and i == 0:
            in_level = True
            I = Subgroup(G, [rng.choice(pel)])
            frob = rng.choice(pel)
        elif not in_level:
            I = G.trivial_subgroup()
            frob = rng.choice(els)
        elif kind < 0.35:
            I = Subgroup(G, [rng.choice(pel)])
            frob = rng.choice(els)
        elif kind < 0.55:
            I = Subgroup(G, [rng.choice(els)])
            frob = rng.choice(els)
        else:
            I = G.trivial_subgroup()
            frob = rng.choice(els)
        ce = 0
        if I.order > 1:
            ce = 2 if I.order % p == 0 else 1
        if in_level:
            level[label] = max(ce, 1) + rng.choice([0, 0, 1])
        primes.append(SettingPrime(label, norm, I, G.reduce(frob), True, ce))
    used = set()
    for i in range(n_other):
        label = f"q{i + 1}"
        if rng.random() < 0.6:
            # tamely ramified prime; N(v) = 1 mod #I
            for _ in range(20):
                g = rng.choice(els)
                d = G.element_order(g)
                if d == 1:
                    continue
                cands = [q for q in _SMALL_PRIMES if q != p and (q - 1) % d == 0 and q not in used and q <= 31]
                if cands:
                    break
            else:
                g, cands = None, []
            if g is not None and cands:
                q = rng.choice(cands)
                used.add(q)
                primes.append(SettingPrime(label, q, Subgroup(G, [g]), G.reduce(rng.choice(els)), False, 1))
                level[label] = 1
                continue
        cands = [q for q in _SMALL_PRIMES if q != p and q not in used and q <= 13]
        q = rng.choice(cands)
        used.add(q)
        primes.append(SettingPrime(label, q, G.trivial_subgroup(), G.reduce(rng.choice(els)), False, 0))
        level[label] = 1
    # auxiliary prime for T_l
    cands = [q for q in _SMALL_PRIMES if q != p and q not in used and q <= 7]
    q = rng.choice(cands)
    primes.append(SettingPrime("t1", q, G.trivial_subgroup(), G.reduce(rng.choice(els)), False, 0))
    return ArithmeticSetting(G, p, primes, IdealIndex(level), degree=rng.choice([1, 2]))
