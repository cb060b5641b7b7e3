"""Property suites for every module, assembled into deterministic reports.

Each check runs a number of cases; case i of check c in suite s draws its
randomness from case_rng(seed, s, c, i), so a single failing case can be
replayed with run_case.  Wall-clock times are kept out of the report body
so that reports are byte-identical across runs.
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import comb

from . import samplers
from .arith import factorint, lcm
from .dirichlet import DirichletCharacter, generalized_bernoulli, l_value, minus_class_number
from .group_ring import (
    GroupRing,
    character_idempotent,
    chi_component,
    minus_projection,
    try_invert,
)
from .rings import QQ, PrecisionError, UElem, cyclotomic_field, integers_mod, unramified_ring
from .serialize import dumps, jsonable

SUITES = ("group_ring", "fitting", "dirichlet", "stickelberger", "ritter_weiss", "eisenstein")

# classical minus class numbers of Q(zeta_p), used as an external oracle
MINUS_CLASS_NUMBERS = {3: 1, 5: 1, 7: 1, 11: 1, 13: 1, 17: 1, 19: 1, 23: 3, 29: 8, 31: 9, 37: 37, 41: 121, 43: 211, 47: 695}

INTEGRALITY_CASES = [(23, 3), (31, 3), (11, 5), (13, 7)]


@dataclass
class Config:
    precision: int = 40
    bound: int = 60
    iters: int = 100  # eisenstein fuzz settings
    cases: int = 50  # random places / settings for the other suites
    pairs: int = 30  # functoriality pairs
    configs: int = 200  # decomposition configurations
    fitting_cases: int = 14

    def to_json(self):
        return asdict(self)


@dataclass
class CheckResult:
    name: str
    verdict: str
    cases: int
    passed: int
    failed: int
    unknown: int
    failures: list = field(default_factory=list)
    reasons: list = field(default_factory=list)
    margin: int | None = None
    tally: dict = field(default_factory=dict)

    def to_json(self):
        return asdict(self)


@dataclass
class VerificationReport:
    suite: str
    seed: int
    config: Config
    checks: list
    timings: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.verdict == "pass" for c in self.checks)

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "suite": self.suite,
            "seed": self.seed,
            "config": self.config.to_json(),
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
        }
        if timing:
            out["wall_clock_seconds"] = {k: f"{v:.3f}" for k, v in self.timings.items()}
        return jsonable(out)

    def dumps(self, timing: bool = False) -> str:
        return dumps(self.to_json(timing))

    def summary_lines(self) -> list[str]:
        lines = []
        for c in self.checks:
            extra = f" failures={c.failures}" if c.failures else ""
            name = c.name if self.suite == "all" else f"{self.suite}.{c.name}"
            lines.append(f"{c.verdict.upper():7} {name} ({c.passed}/{c.cases}){extra}")
        return lines


class CaseResult(dict):
    """ok is True/False, or None with a reason when the case could not be decided."""


def _ok(ok, margin=None, tags=(), reason=None):
    return CaseResult(ok=bool(ok) if ok is not None else None, margin=margin, tags=list(tags), reason=reason)


# ---------------------------------------------------------------------------
# group_ring


def _random_element(A, rng, lo=-3, hi=3):
    return A.from_vector([A.ring.coerce(rng.randint(lo, hi)) for _ in range(A.group.order)])


def _gr_ring(rng, G):
    return GroupRing(G, rng.choice([QQ, integers_mod(3, 40), integers_mod(5, 40)]))


def gr_convolution(rng, cfg):
    G = samplers.random_cm_group(rng)
    A = _gr_ring(rng, G)
    x, y, z = (_random_element(A, rng) for _ in range(3))
    return _ok((x * y) * z == x * (y * z) and x * y == y * x and x * (y + z) == x * y + x * z)


def gr_sharp(rng, cfg):
    G = samplers.random_cm_group(rng)
    A = _gr_ring(rng, G)
    x, y = _random_element(A, rng), _random_element(A, rng)
    return _ok((x * y).sharp() == x.sharp() * y.sharp() and (x + y).sharp() == x.sharp() + y.sharp()
               and x.sharp().sharp() == x and A.one().sharp() == A.one())


def gr_idempotents(rng, cfg):
    G = samplers.random_cm_group(rng)
    F = cyclotomic_field(lcm(G.exponent, 2))
    A = GroupRing(G, F)
    es = {psi: character_idempotent(psi, F) for psi in G.characters()}
    ok = True
    chars = list(es)
    for i, a in enumerate(chars):
        for b in chars[i:]:
            prod = es[a] * es[b]
            if prod != (es[a] if a == b else A.zero()):
                ok = False
    total = A.zero()
    odd = A.zero()
    for psi, e in es.items():
        total = total + e
        if psi.is_odd():
            odd = odd + e
    ok = ok and total == A.one()
    ok = ok and odd == (A.one() - A.basis(G.c)) * Fraction(1, 2)
    return _ok(ok, tags=[f"characters={len(chars)}"])


def gr_chi_component_sharp(rng, cfg):
    G = samplers.random_cm_group(rng)
    p = rng.choice([3, 5])
    A = GroupRing(G, integers_mod(p, cfg.precision))
    x = _random_element(A, rng, 0, p**3)
    split = G.p_split(p)
    chi = rng.choice(split.Gprime.characters())
    lhs = chi_component(x.sharp(), chi, split)
    rhs = chi_component(x, chi.inverse(), split).sharp()
    return _ok(lhs == rhs)


_LOCAL_RINGS = [(3, 1, (3,), 1), (3, 2, (3,), 1), (3, 1, (9,), 1), (3, 1, (3,), 4), (5, 1, (5,), 1), (3, 1, (3, 3), 1)]


def gr_locality(rng, cfg, index=0):
    """Exhaustive over one small ring: try_invert succeeds iff the augmentation is a unit mod p."""
    import itertools

    from .groups import FiniteAbelianGroup

    p, N, orders, e = _LOCAL_RINGS[index % len(_LOCAL_RINGS)]
    O = integers_mod(p, N) if e == 1 else unramified_ring(p, N, e)
    P = FiniteAbelianGroup(orders)
    A = GroupRing(P, O)
    if e == 1:
        coeffs = [O.coerce(a) for a in range(O.modulus)]
    else:
        coeffs = [UElem(O, t) for t in itertools.product(range(O.modulus), repeat=O.degree)]
    ok = True
    units = 0
    for vec in itertools.product(coeffs, repeat=P.order):
        x = A.from_vector(list(vec))
        inv = try_invert(x)
        aug_unit = O.is_unit(x.augmentation())
        if (inv is not None) != aug_unit or (inv is not None and x * inv != A.one()):
            ok = False
            break
        units += inv is not None
    return _ok(ok, tags=[f"ring={p}^{N}[{'x'.join(map(str, orders))}],e={e}"])


# ---------------------------------------------------------------------------
# fitting

_FITTING_RINGS = [(3, (3,), 1), (3, (9,), 1), (3, (3, 3), 1), (3, (3,), 4), (3, (), 4), (5, (5,), 1), (3, (), 1)]
_SMALL_RINGS = [(3, 2, (3,), 1, 1), (3, 6, (), 1, 1), (3, 3, (), 4, 1), (3, 1, (3,), 4, 1), (3, 1, (3,), 1, 2), (3, 3, (), 1, 2)]


def _fitting_ring(cfg, index):
    from .fitting import make_ring

    p, group, e = _FITTING_RINGS[index % len(_FITTING_RINGS)]
    return make_ring(p, cfg.precision, group, e)


def _fitting_check(fn):
    def case(rng, cfg, index=0):
        R = _fitting_ring(cfg, index)
        r = fn(R, rng)
        return _ok(r["equal"] and r["certified"], margin=r.get("margin"), tags=[repr(R)])

    return case


def fit_order_lemma(rng, cfg, index=0):
    from .fitting import check_order_lemma

    R = _fitting_ring(cfg, index)
    r = check_order_lemma(R, rng)
    return _ok(r["ok"], tags=[repr(R)])


def fit_order_formula(rng, cfg, index=0):
    from .fitting import check_order_formula, random_square_module

    R = _fitting_ring(cfg, index)
    r = check_order_formula(random_square_module(R, rng.randint(1, 2), rng))
    return _ok(r["equal"] and r["certified"], tags=[repr(R)])


def fit_brute_force(rng, cfg, index=0):
    """module_order against enumeration of the cokernel over a ring of size <= 3^6."""
    from .fitting import PresentedModule, brute_force_order, make_ring, module_order_report, random_element

    p, N, group, e, rows = _SMALL_RINGS[index % len(_SMALL_RINGS)]
    R = make_ring(p, N, group, e)
    for _ in range(50):
        mat = [[random_element(R, rng) for _ in range(rows)] for _ in range(rows)]
        mod = PresentedModule(R, mat, rows=rows)
        try:
            rep = module_order_report(mod, slack=0)
        except PrecisionError:
            continue
        brute = brute_force_order(mod)
        return _ok(rep.order == brute, margin=rep.margin, tags=[f"{p}^{N}[{group}],e={e},rows={rows}"])
    return _ok(None, reason="no presentation within precision")


# ---------------------------------------------------------------------------
# dirichlet


def _primitive_characters(f):
    return [psi for psi in DirichletCharacter.all(f) if psi.conductor() == f]


def dir_golden(rng, cfg):
    chi4 = next(psi for psi in DirichletCharacter.all(4) if psi.is_odd())
    chi3 = next(psi for psi in DirichletCharacter.all(3) if psi.is_odd())
    a = l_value(chi4).to_rational()
    b = l_value(chi3).to_rational()
    h = {p: minus_class_number(p) for p in MINUS_CLASS_NUMBERS}
    ok = a == Fraction(1, 2) and b == Fraction(1, 3) and h == MINUS_CLASS_NUMBERS
    return _ok(ok, tags=[f"L(chi_-4,0)={a}", f"L(chi_-3,0)={b}", f"h23-={h[23]}"])


def dir_parity(rng, cfg, index=0):
    """B_{k,psi} = 0 unless psi(-1) = (-1)^k, conductor index+1 <= 40, k <= 6.

    The trivial character at k = 1 is the classical exception (B_1 = 1/2).
    """
    f = index + 1
    ok = True
    for psi in _primitive_characters(f):
        for k in range(1, 7):
            if psi.is_trivial() and k == 1:
                continue
            if psi.parity() != (-1) ** k and generalized_bernoulli(psi, k):
                ok = False
    return _ok(ok)


def dir_conductor(rng, cfg, index=0):
    m = index + 1
    ok = True
    for chi in DirichletCharacter.all(m):
        pr = chi.primitive()
        ind = pr.induce(m)
        if pr.conductor() != pr.modulus or any(ind(a) != chi(a) for a in range(m)):
            ok = False
    return _ok(ok)


def dir_nonvanishing(rng, cfg, index=0):
    f = index + 1
    return _ok(all(l_value(psi) for psi in _primitive_characters(f) if psi.is_odd()))


def power_sum_bernoulli(psi, kmax):
    """B_{k,psi} for k <= kmax from (k+1) sum_{a<=f} psi(a) a^k = sum_i C(k+1,i) B_{i,psi} f^{k+1-i}."""
    f = psi.modulus
    F = psi.field
    B = []
    for k in range(kmax + 1):
        S = F.zero
        for a in range(1, f + 1):
            v = psi(a % f if f > 1 else 0, F)
            if v is not None:
                S = S + v * (a**k)
        acc = S * (k + 1)
        for i in range(k):
            acc = acc - B[i] * (comb(k + 1, i) * f ** (k + 1 - i))
        B.append(acc * Fraction(1, (k + 1) * f))
    return B


def dir_power_sums(rng, cfg):
    f = rng.choice([f for f in range(1, 41) if f % 4 != 2])
    psi = rng.choice(_primitive_characters(f))
    B = power_sum_bernoulli(psi, 6)
    return _ok(all(B[k] == generalized_bernoulli(psi, k) for k in range(1, 7)), tags=[f"f={f}"])


# ---------------------------------------------------------------------------
# stickelberger


def _stick():
    from . import stickelberger

    return stickelberger


def st_integrality(rng, cfg, index=0):
    st = _stick()
    m, p = INTEGRALITY_CASES[index % len(INTEGRALITY_CASES)]
    ext = st.CyclotomicExtension(m)
    aux = st.auxiliary_prime(ext, p)
    hyp = st.check_hypotheses(ext, [m], [aux], p)
    theta = st.stickelberger_element(ext, [m], [aux])
    r = st.theta_integrality(theta, p, cfg.precision)
    return _ok(r["integral"] and hyp["H3prime_p"] and hyp["H1"], margin=r["margin"], tags=[f"m={m},p={p},aux={aux}"])


def st_functoriality(rng, cfg):
    st = _stick()
    ext = samplers.random_extension(rng)
    S = samplers.random_quotient(rng, ext)
    sf, sp = samplers.sigma_sets(rng, ext)
    r = st.verify_theta_functoriality(ext, S, sf, sp)
    return _ok(r["equal"] and r["hbar_identity"], tags=[f"m={ext.m},[H:K]={S.order}"])


def _field(G):
    return cyclotomic_field(lcm(G.exponent, 2))


def _h_value(v, psi, F):
    """psi(h_v) in closed form."""
    if not psi.is_trivial_on(v.inertia):
        return F.one
    return F.one - psi.value(v.group.inv(v.frobenius), F) + v.inertia.order


def st_nonzerodivisor(rng, cfg):
    st = _stick()
    ext = samplers.random_extension(rng, max_order=24)
    sf, sp = samplers.sigma_sets(rng, ext)
    theta = st.stickelberger_element(ext, sf, sp)
    F = _field(ext.group)
    return _ok(all(theta.evaluate(psi, F) for psi in ext.odd_characters()))


def st_sigma_variance(rng, cfg):
    """Adding v to Sigma multiplies psi(theta) by psi(h_v); adding w to Sigma' by psi(h'_w)."""
    st = _stick()
    ext = samplers.random_extension(rng, max_order=24)
    sf, sp = samplers.sigma_sets(rng, ext)
    v = st.auxiliary_prime(ext, 0, avoid=sf + sp)
    w = st.auxiliary_prime(ext, 0, avoid=sf + sp + [v])
    F = _field(ext.group)
    base = st.stickelberger_element(ext, sf, sp)
    big = st.stickelberger_element(ext, sf + [v], sp)
    smooth = st.stickelberger_element(ext, sf, sp + [w])
    pv, pw = ext.place(v), ext.place(w)
    ok = True
    for psi in ext.odd_characters():
        b = base.evaluate(psi, F)
        if big.evaluate(psi, F) != b * _h_value(pv, psi, F):
            ok = False
        hw = F.one - psi.value(ext.group.inv(pw.frobenius), F) * w
        if smooth.evaluate(psi, F) != b * hw:
            ok = False
    # the same at the group-ring level
    ok = ok and big == minus_projection(st.euler_factor(pv, "h")) * base
    ok = ok and smooth == st.euler_factor(pw, "h_prime") * base
    return _ok(ok, tags=[f"m={ext.m},v={v},w={w}"])


def st_order_identity(rng, cfg):
    from .ritter_weiss import av_minus_order_check

    st = _stick()
    ext = samplers.random_extension(rng, max_order=24)
    primes = sorted(factorint(ext.m)) + [st.auxiliary_prime(ext, 0)]
    return _ok(all(av_minus_order_check(ext.place(l))["equal"] for l in primes))


def st_theta_sharp(rng, cfg):
    st = _stick()
    ext = samplers.random_extension(rng, max_order=24)
    sf, sp = samplers.sigma_sets(rng, ext)
    theta = st.stickelberger_element(ext, sf, sp)
    F = _field(ext.group)
    ok = True
    for psi in ext.odd_characters():
        rhs = F.coerce(st.smoothed_l_value(ext, psi, sp))
        for l in sf:
            rhs = rhs * st.euler_factor(ext.place(l), "h").sharp().evaluate(psi, F)
        if theta.sharp().evaluate(psi, F) != rhs:
            ok = False
    return _ok(ok)


def st_classical(rng, cfg, index=0):
    """prod (1 - nu/#I phi^{-1}) omega against the classical Stickelberger element of Q(zeta_m)."""
    st = _stick()
    m = samplers.valid_moduli(40)[index % len(samplers.valid_moduli(40))]
    ext = st.CyclotomicExtension(m)
    lhs = st.dk_theta(ext, sorted(factorint(m)))
    rhs = minus_projection(st.classical_stickelberger(m, ext))
    return _ok(lhs == rhs, tags=[f"m={m}"])


def st_conditions(rng, cfg):
    st = _stick()
    G, places, p = samplers.random_decomposition_config(rng)
    r = st.check_main_theorem_conditions(G, places, p)
    return _ok(r["equivalent"], tags=[f"a={r['a']}"])


# ---------------------------------------------------------------------------
# ritter_weiss


def _rw_place(rng):
    G = samplers.random_cm_group(rng)
    return samplers.random_place(rng, G), rng.randint(1, 3)


def rw_cokernel(rng, cfg):
    from .ritter_weiss import av_module, cokernel_of_f

    v, c = _rw_place(rng)
    return _ok(sorted(cokernel_of_f(v, c)) == sorted(av_module(v, c)), tags=[f"#I={v.inertia.order}"])


def rw_variance(rng, cfg):
    from .ritter_weiss import verify_variance_identity

    v, c = _rw_place(rng)
    r = verify_variance_identity(v, c, samples=3, rng=rng)
    return _ok(r["variance"] and r["membership"])


def rw_injective(rng, cfg):
    from .ritter_weiss import f_bar_injective

    v, c = _rw_place(rng)
    return _ok(f_bar_injective(v, c))


def rw_order(rng, cfg):
    from .ritter_weiss import av_minus_order_check

    v, _ = _rw_place(rng)
    return _ok(av_minus_order_check(v)["equal"])


# ---------------------------------------------------------------------------
# eisenstein


def _failed_keys(d):
    return [k for k, v in d.items() if v is False]


def ei_hecke(rng, cfg):
    from .eisenstein.checks import hecke_suite
    from .eisenstein.generators import random_setting

    s = random_setting(rng)
    r = hecke_suite(s, rng, cfg.bound, cfg.precision)
    tags = sorted({k.split("[")[-1].rstrip("]") for k in r if "e_ord" in k and "[" in k})
    bad = _failed_keys(r)
    return _ok(not bad, tags=tags, reason=", ".join(bad) or None)


def ei_operator_facts(rng, cfg):
    from .eisenstein.checks import check_operator_facts
    from .eisenstein.generators import random_setting

    s = random_setting(rng)
    bad = _failed_keys(check_operator_facts(s, rng, cfg.bound))
    return _ok(not bad, reason=", ".join(bad) or None)


def ei_tw1_coeff(rng, cfg):
    from .eisenstein.determinant import check_tw1_coeff
    from .eisenstein.generators import random_setting

    s = random_setting(rng, want_p_ba=True)
    r = check_tw1_coeff(s)
    return _ok(r["a"] and r["b"], tags=[f"#P_ba={len(s.P_ba.support)}"])


def ei_t_determinant(rng, cfg):
    from .eisenstein.determinant import random_t_instance, t_determinant_identity
    from .eisenstein.generators import random_setting

    for _ in range(50):
        s = random_setting(rng, want_p_ba=True)
        inst = random_t_instance(s, rng)
        if inst is not None:
            break
    else:
        return _ok(None, reason="no instance with D <= 3")
    r = t_determinant_identity(s, *inst)
    keys = ("raise_to_nP'", "dets_agree", "identity", "induction")
    return _ok(all(r[k] for k in keys), tags=[f"D={len(inst[0])}"],
               reason=", ".join(k for k in keys if not r[k]) or None)


def ei_constant_terms(rng, cfg):
    from .eisenstein.constant_terms import check_constant_terms
    from .eisenstein.generators import random_setting

    s = random_setting(rng)
    r = check_constant_terms(s, rng)
    keys = ("olW_agree", "euler_sum", "theta_sharp", "homogeneous")
    return _ok(all(r[k] for k in keys), tags=["nonzero" if r["nonzero_terms"] else "all-zero"],
               reason=", ".join(k for k in keys if not r[k]) or None)


def ei_units(rng, cfg):
    from .eisenstein.units import random_unit_config, y_unit_report

    pgroup = rng.random() < 0.8
    r = y_unit_report(random_unit_config(rng, p_group_inertia=pgroup), N=cfg.precision)
    return _ok(r["ok"], tags=["p-group inertia" if pgroup else "other inertia"])


def ei_derived(rng, cfg):
    from .eisenstein.generators import random_setting
    from .eisenstein.checks import check_derived_settings

    s = random_setting(rng)
    return _ok(all(check_derived_settings(s, rng).values()))


# ---------------------------------------------------------------------------
# registry: name -> (case function, count, whether the function takes the case index)

def _registry(cfg: Config) -> dict:
    return {
        "group_ring": [
            ("convolution", gr_convolution, cfg.cases, False),
            ("sharp_automorphism", gr_sharp, cfg.cases, False),
            ("character_idempotents", gr_idempotents, max(cfg.cases // 5, 1), False),
            ("chi_component_sharp", gr_chi_component_sharp, cfg.cases, False),
            ("locality_exhaustive", gr_locality, len(_LOCAL_RINGS), True),
        ],
        "fitting": [
            ("composition", _fitting_check(_call("check_composition")), cfg.fitting_cases, True),
            ("diagram", _fitting_check(_call("check_diagram")), cfg.fitting_cases, True),
            ("direct_sum", _fitting_check(_call("check_direct_sum")), cfg.fitting_cases, True),
            ("lift_independence", _fitting_check(_call("check_lift_independence")), cfg.fitting_cases, True),
            ("order_lemma", fit_order_lemma, cfg.fitting_cases, True),
            ("order_two_routes", fit_order_formula, cfg.fitting_cases, True),
            ("order_brute_force", fit_brute_force, 2 * len(_SMALL_RINGS), True),
        ],
        "dirichlet": [
            ("golden_values", dir_golden, 1, False),
            ("bernoulli_parity", dir_parity, 40, True),
            ("conductor_induction", dir_conductor, 40, True),
            ("odd_nonvanishing", dir_nonvanishing, 100, True),
            ("power_sum_oracle", dir_power_sums, cfg.cases, False),
        ],
        "stickelberger": [
            ("integrality", st_integrality, len(INTEGRALITY_CASES), True),
            ("functoriality", st_functoriality, cfg.pairs, False),
            ("nonzerodivisor", st_nonzerodivisor, cfg.cases // 2, False),
            ("sigma_variance", st_sigma_variance, cfg.cases // 2, False),
            ("order_identity", st_order_identity, cfg.cases // 2, False),
            ("theta_sharp", st_theta_sharp, cfg.cases // 2, False),
            ("classical_oracle", st_classical, len(samplers.valid_moduli(40)), True),
            ("condition_equivalence", st_conditions, cfg.configs, False),
        ],
        "ritter_weiss": [
            ("coker_f_bar", rw_cokernel, cfg.cases, False),
            ("variance_membership", rw_variance, cfg.cases, False),
            ("f_bar_injective", rw_injective, cfg.cases, False),
            ("minus_order", rw_order, cfg.cases, False),
        ],
        "eisenstein": [
            ("hecke_identities", ei_hecke, cfg.iters, False),
            ("operator_facts", ei_operator_facts, cfg.iters, False),
            ("tw1_coefficients", ei_tw1_coeff, cfg.iters, False),
            ("t_determinant", ei_t_determinant, cfg.iters, False),
            ("constant_terms", ei_constant_terms, cfg.iters, False),
            ("y_unit", ei_units, cfg.iters, False),
            ("derived_settings", ei_derived, cfg.iters, False),
        ],
    }


def _call(name):
    def fn(R, rng):
        from . import fitting

        return getattr(fitting, name)(R, rng)

    return fn


def _run_one(fn, takes_index, rng, cfg, index):
    try:
        return fn(rng, cfg, index) if takes_index else fn(rng, cfg)
    except PrecisionError as e:
        return _ok(None, reason=f"precision: {e}")
    except Exception as e:  # a crash is a failure, with the reason kept
        return _ok(False, reason=f"{type(e).__name__}: {e}")


def run_check(suite, name, fn, count, takes_index, seed, cfg) -> CheckResult:
    res = CheckResult(name, "pass", count, 0, 0, 0)
    tally = {}
    for i in range(count):
        r = _run_one(fn, takes_index, samplers.case_rng(seed, suite, name, i), cfg, i)
        for t in r["tags"]:
            tally[t] = tally.get(t, 0) + 1
        if r["margin"] is not None:
            res.margin = r["margin"] if res.margin is None else min(res.margin, r["margin"])
        if r["ok"] is True:
            res.passed += 1
            continue
        if r["ok"] is None:
            res.unknown += 1
        else:
            res.failed += 1
        if len(res.failures) < 10:
            res.failures.append(i)
        if r["reason"] and len(res.reasons) < 3:
            res.reasons.append(f"case {i}: {r['reason']}")
    res.tally = dict(sorted(tally.items()))
    res.verdict = "fail" if res.failed else ("unknown" if res.unknown else "pass")
    return res


def run_suite(name: str, seed: int = 0, config: Config | None = None, checks=None) -> VerificationReport:
    """Run every check of one suite (or of all suites); `checks` optionally restricts by name."""
    cfg = config or Config()
    if name != "all" and name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; expected one of {', '.join(SUITES + ('all',))}")
    reg = _registry(cfg)
    names = SUITES if name == "all" else (name,)
    results = []
    timings = {}
    for suite in names:
        for check, fn, count, takes_index in reg[suite]:
            if checks and check not in checks:
                continue
            t = time.perf_counter()
            r = run_check(suite, check, fn, count, takes_index, seed, cfg)
            if name == "all":
                r.name = f"{suite}.{check}"
            timings[r.name] = time.perf_counter() - t
            results.append(r)
    return VerificationReport(name, seed, cfg, results, timings)


def run_case(suite: str, check: str, index: int, seed: int = 0, config: Config | None = None) -> dict:
    """Replay a single case (for example a reported failure index)."""
    cfg = config or Config()
    for name, fn, _, takes_index in _registry(cfg)[suite]:
        if name == check:
            return dict(_run_one(fn, takes_index, samplers.case_rng(seed, suite, check, index), cfg, index))
    raise ValueError(f"unknown check {check!r} in suite {suite!r}")


__all__ = ["Config", "CheckResult", "VerificationReport", "run_suite", "run_case", "SUITES", "power_sum_bernoulli"]
