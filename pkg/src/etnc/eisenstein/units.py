"""The unit y_p = (1 - (nu/#I) phi)(1 - (nu/#I) phi + nu)^{-1} in the chi-component."""

import random
from fractions import Fraction

from ..group_ring import try_invert
from ..groups import Subgroup
from .generators import _SHAPES, _group, _p_elements
from .ideals import IdealIndex
from .setting import ArithmeticSetting, SettingPrime


def unit_setting(G, p, inertia, frob):
    v = SettingPrime("p1", p, inertia, G.reduce(frob), True, 2 if inertia.order % p == 0 else (1 if inertia.order > 1 else 0))
    return ArithmeticSetting(G, p, [v], IdealIndex({"p1": max(v.conductor_exponent, 1)}))


def y_unit_report(s, label="p1", N=40):
    """Exact y_p, its p-adic image, an inverse, and the second expression for y_p - 1."""
    v = s.primes[label]
    QG = s.QG
    nu = s.nu(v.inertia)
    e = v.inertia.order
    phi = QG.basis(v.frobenius)
    a = QG.one() - nu * phi * Fraction(1, e)
    b = a + nu
    bx = try_invert(s.project(b))
    if bx is None:
        return {"ok": False, "reason": "1 - (nu/#I) phi + nu is not invertible"}
    y = s.project(a) * bx
    try:
        yp = s.to_padic(y, N)
    except ValueError:
        return {"ok": False, "reason": "y_p is not p-integral"}
    inv = try_invert(yp)
    one = yp.parent.one()
    unit = inv is not None and yp * inv == one
    trivial = y == s.A.one()
    if not s.project(nu):
        # I_p is not a p-group: nu vanishes in the chi-component
        return {"ok": unit and trivial, "unit": unit, "second_form": None, "is_one": trivial}
    # y - 1 = -nu / (1 - phi + nu)
    d = try_invert(s.to_padic(s.project(QG.one() - phi + nu), N))
    second = d is not None and yp - one == -(s.to_padic(s.project(nu), N) * d)
    return {"ok": unit and second, "unit": unit, "second_form": second, "is_one": trivial}


def random_unit_config(rng: random.Random, p_group_inertia=True):
    """G = G' x P with P != 1, I_p a p-group (or not) and G_p/I_p not a p-group."""
    p = rng.choice([3, 5])
    shapes = [sh for sh in _SHAPES[p] if sh[1]]
    e, pparts = rng.choice(shapes)
    G = _group(e, pparts)
    pel = [g for g in _p_elements(G, p) if g != G.identity]
    if p_group_inertia:
        I = Subgroup(G, [rng.choice(pel)])
    else:
        nonp = [g for g in G.elements if G.element_order(g) % p and g != G.identity]
        I = Subgroup(G, [rng.choice(nonp), rng.choice(pel)])
    while True:
        frob = rng.choice(G.elements)
        D = I.join(Subgroup(G, [frob]))
        if not D.is_p_group(p):
            break
    return unit_setting(G, p, I, frob)
