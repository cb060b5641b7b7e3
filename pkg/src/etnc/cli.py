"""Command line entry point; every subcommand prints UTF-8 JSON with integers as strings."""

from __future__ import annotations

import argparse
import json
import sys

from .serialize import dumps, element, jsonable

EXIT_FAIL = 1
EXIT_USAGE = 2


class CLIError(Exception):
    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition


def _emit(obj, out=None):
    out = out or sys.stdout
    out.write(dumps(obj) + "\n")


def _int_list(text):
    text = (text or "").strip()
    if not text:
        return []
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if tok:
            try:
                out.append(int(tok))
            except ValueError:
                raise CLIError(f"expected an integer, got {tok!r}") from None
    return out


def _value(x):
    """An exact L-value or character value: "a/b" when rational, else the cyclotomic coordinates."""
    if x.is_rational():
        q = x.to_rational()
        return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
    return {"cyclotomic": str(x.field.n), "coeffs": [str(c) for c in x.c], "text": repr(x)}


# ---------------------------------------------------------------------------


def cmd_verify(args):
    from .verify import Config, run_case, run_suite

    cfg = Config(precision=args.precision, bound=args.bound, iters=args.iters)
    if args.case is not None:
        if not args.check or args.suite == "all":
            raise CLIError("--case needs --check and a single --suite")
        r = run_case(args.suite, args.check, args.case, args.seed, cfg)
        _emit({"suite": args.suite, "check": args.check, "case": args.case, "seed": args.seed, "result": r})
        return 0 if r["ok"] else EXIT_FAIL
    try:
        rep = run_suite(args.suite, args.seed, cfg, checks=args.check and [args.check])
    except ValueError as e:
        raise CLIError(str(e)) from None
    if args.json:
        _emit(rep.to_json(timing=args.timing))
    else:
        short = {"suite": rep.suite, "seed": rep.seed, "passed": rep.passed,
                 "checks": {c.name: c.verdict for c in rep.checks}}
        _emit(short)
        for line in rep.summary_lines():
            sys.stderr.write(line + "\n")
    return 0 if rep.passed else EXIT_FAIL


def cmd_stickelberger(args):
    from .stickelberger import (
        CyclotomicExtension,
        HypothesisError,
        check_hypotheses,
        stickelberger_element,
        theta_integrality,
        theta_values,
    )

    sigma_tokens = [t.strip() for t in (args.sigma or "").split(",") if t.strip()]
    has_inf = "inf" in sigma_tokens
    sigma_f = _int_list(",".join(t for t in sigma_tokens if t != "inf"))
    sigma_prime = _int_list(args.sigma_prime)
    try:
        ext = CyclotomicExtension(args.m, N_units=_int_list(args.subgroup))
    except ValueError as e:
        raise CLIError(str(e)) from None
    hyp = check_hypotheses(ext, sigma_f, sigma_prime, args.p)
    try:
        theta = stickelberger_element(ext, sigma_f, sigma_prime, k=args.k)
    except HypothesisError as e:
        raise CLIError(str(e), e.condition) from None
    if args.strict:
        for cond in ("H1", "H3prime_p", "H4"):
            if not hyp[cond]:
                raise CLIError(f"{cond} fails", cond)
    values = {str(i): _value(v) for i, v in theta_values(theta).items()}
    sigma_labels = {str(l): [str(a) for a in ext.place(l).frobenius] for l in sigma_f}
    _emit({
        "m": args.m,
        "group": ext.group.to_json(),
        "sigma": (["inf"] if has_inf else []) + sigma_f,
        "sigma_prime": sigma_prime,
        "k": args.k,
        "theta": element(theta),
        "sigma_a": {str(a): [str(x) for x in ext.sigma(a)] for a in ext.units.units()},
        "frobenius": sigma_labels,
        "character_values": values,
        "integrality": theta_integrality(theta, args.p, args.precision),
        "hypotheses": hyp,
        "infinite_places_in_sigma": True,
    })
    return 0


def cmd_lvalue(args):
    from .dirichlet import DirichletCharacter, l_value

    try:
        psi = DirichletCharacter.from_index(args.modulus, args.char_index)
        val = l_value(psi, args.k, deplete=_int_list(args.deplete), smooth=_int_list(args.smooth))
    except ValueError as e:
        raise CLIError(str(e)) from None
    _emit({
        "modulus": args.modulus,
        "char_index": args.char_index,
        "exponents": list(psi.char.exps),
        "conductor": psi.conductor(),
        "odd": psi.is_odd(),
        "k": args.k,
        "s": 1 - args.k,
        "value": _value(val),
    })
    return 0


def cmd_fitting(args):
    from .fitting import PresentedModule, fitting_ideal, module_order_report
    from .rings import PrecisionError

    try:
        with open(args.matrix, encoding="utf-8") as fh:
            data = json.load(fh)
        mod = PresentedModule.from_json(data)
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
        raise CLIError(f"malformed matrix input: {e}") from None
    out = {"rows": mod.rows, "cols": mod.cols, "ring": data["ring"]}
    if args.what == "order":
        try:
            rep = module_order_report(mod)
        except PrecisionError as e:
            raise CLIError(str(e), "precision") from None
        out.update({"p": rep.p, "log_p": rep.log_p, "order": rep.order, "margin": rep.margin,
                    "certified": rep.certified, "component_route": rep.route_components})
    else:
        F = fitting_ideal(mod)
        out.update({"generators": [element(g) for g in F.generators], "principal": F.principal is not None,
                    "valuation": F.valuation})
    _emit(out)
    return 0


def cmd_hecke_fuzz(args):
    from .verify import Config, run_suite

    cfg = Config(bound=args.bound, iters=args.iters, precision=args.precision)
    rep = run_suite("eisenstein", args.seed, cfg, checks=["hecke_identities"])
    _emit(rep.to_json(timing=args.timing))
    return 0 if rep.passed else EXIT_FAIL


def cmd_class_number_minus(args):
    from .dirichlet import minus_class_number

    try:
        h = minus_class_number(args.p)
    except ValueError as e:
        raise CLIError(str(e)) from None
    _emit({"p": args.p, "field": f"Q(zeta_{args.p})", "h_minus": h})
    return 0


# ---------------------------------------------------------------------------


def build_parser():
    from .verify import SUITES

    ap = argparse.ArgumentParser(prog="etnc", description="Exact Stickelberger, Fitting-ideal and Eisenstein-series checks.")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a property suite")
    v.add_argument("--suite", default="all", help=f"one of {', '.join(SUITES)}, all")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--json", action="store_true", help="print the full report")
    v.add_argument("--timing", action="store_true", help="add wall-clock seconds to the report")
    v.add_argument("--precision", type=int, default=40)
    v.add_argument("--bound", type=int, default=60)
    v.add_argument("--iters", type=int, default=100)
    v.add_argument("--check", help="run only this check")
    v.add_argument("--case", type=int, help="replay a single case index of --check")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("stickelberger", help="theta for Q(zeta_m)^N")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--sigma", default="inf", help="comma list, e.g. inf,23")
    s.add_argument("--sigma-prime", default="", help="comma list of primes")
    s.add_argument("--subgroup", default="", help="residues mod m generating N")
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--precision", type=int, default=40)
    s.add_argument("--strict", action="store_true", help="fail when H1, H3' or H4 does not hold")
    s.add_argument("--json", action="store_true", help="accepted for symmetry; output is always JSON")
    s.set_defaults(func=cmd_stickelberger)

    lv = sub.add_parser("lvalue", help="L(psi, 1 - k) for a Dirichlet character")
    lv.add_argument("--modulus", type=int, required=True)
    lv.add_argument("--char-index", type=int, required=True)
    lv.add_argument("--k", type=int, default=1)
    lv.add_argument("--smooth", default="")
    lv.add_argument("--deplete", default="")
    lv.add_argument("--json", action="store_true", help="accepted for symmetry; output is always JSON")
    lv.set_defaults(func=cmd_lvalue)

    f = sub.add_parser("fitting", help="order or Fitting ideal of a presented module")
    f.add_argument("--matrix", required=True, help="JSON file with ring, rows, cols, entries")
    f.add_argument("--what", choices=["order", "ideal"], default="order")
    f.set_defaults(func=cmd_fitting)

    h = sub.add_parser("hecke-fuzz", help="Hecke identities on random abstract settings")
    h.add_argument("--seed", type=int, default=0)
    h.add_argument("--iters", type=int, default=100)
    h.add_argument("--bound", type=int, default=60)
    h.add_argument("--precision", type=int, default=40)
    h.add_argument("--timing", action="store_true")
    h.set_defaults(func=cmd_hecke_fuzz)

    c = sub.add_parser("class-number-minus", help="h^- of Q(zeta_p)")
    c.add_argument("--p", type=int, required=True)
    c.set_defaults(func=cmd_class_number_minus)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except CLIError as e:
        _emit({"error": str(e), "condition": e.condition})
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())


__all__ = ["main", "build_parser", "jsonable"]
