"""Command line entry point.

Exit codes: 0 when everything passes, 1 when a mathematical check fails,
2 on invalid input.  stdout carries results, stderr carries progress.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from math import factorial

from .curve import CurveError, default_curve
from .io import FormatError, form_latex, form_plain, form_to_dict, load_curve

log = logging.getLogger("flipsym")

COMMANDS = ("omega-compute", "omega-check", "omega-oracle", "partitions-check",
            "partitions-poly-check")
CHECKS = ("symmetry", "flip", "holomorphy", "expand", "resk", "ahp", "cancellation")
MAX_N = 10  # one distinguished slot plus nine u slots


class InputError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="flipsym", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--curve", metavar="PATH", help="curve file (default: x = z^2 + 2z, iota = -z)")
    p.add_argument("--n", type=int, help="number of arguments of omega_n")
    p.add_argument("--checks", metavar="LIST", help="comma separated subset of " + ",".join(CHECKS))
    p.add_argument("--out", metavar="PATH", help="write the result here instead of stdout")
    p.add_argument("--format", choices=("json", "latex", "plain"), default="plain")
    p.add_argument("--s", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--nu", metavar="CSV", help="partition as comma separated parts, e.g. 3,1,1,1")
    p.add_argument("--s-max", type=int, dest="s_max")
    p.add_argument("--m-max", type=int, dest="m_max")
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-v", "--verbose", action="store_true", help="progress messages on stderr")
    return p


def _curve(args):
    if args.curve is None:
        return default_curve()
    return load_curve(args.curve)


def _n(args, lo=2) -> int:
    if args.n is None:
        raise InputError("--n is required")
    if not lo <= args.n <= MAX_N:
        raise InputError(f"--n must lie between {lo} and {MAX_N}")
    return args.n


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
        log.info("wrote %s", args.out)
    else:
        print(text)


def run_omega_compute(args) -> int:
    from .omega import omega_n
    curve = _curve(args)
    n = _n(args)
    t = time.time()
    w = omega_n(curve, n)
    log.info("omega_%d computed in %.2fs", n, time.time() - t)
    if args.format == "json":
        text = json.dumps(form_to_dict(w, latex=True), indent=1)
    elif args.format == "latex":
        text = form_latex(w)
    else:
        text = form_plain(w)
    _emit(args, text)
    return 0


def _run_check(name: str, curve, n: int) -> list:
    from .omega import checks as C
    m = n - 1
    if name == "symmetry":
        return [C.check_symmetry(curve, n)]
    if name == "flip":
        res = C.flip_identity_residual(curve, n)
        return [C.CheckResult(f"flip n={n}", res.is_zero(), res)]
    if name == "holomorphy":
        return [C.check_holomorphy(curve, n)]
    if name == "expand":
        return [C.check_involution_expand(curve, m)]
    if name == "resk":
        return [C.check_resk_lemma(curve, m)]
    if name == "ahp":
        return [C.check_ahp_pole(curve, m)]
    if name == "cancellation":
        return [C.check_final_cancellation(curve, m, k, l) for k, l in C.admissible_kl(m)]
    raise InputError(f"unknown check {name!r}")


def run_omega_check(args) -> int:
    curve = _curve(args)
    n = _n(args)
    if not args.checks:
        raise InputError("--checks is required")
    names = [c.strip() for c in args.checks.split(",") if c.strip()]
    unknown = [c for c in names if c not in CHECKS]
    if unknown or not names:
        raise InputError(f"unknown checks {unknown}; choose from {', '.join(CHECKS)}")
    if "resk" in names and n < 2:
        raise InputError("resk needs n >= 2")
    results = []
    for name in names:
        t = time.time()
        log.info("running %s for n=%d", name, n)
        results.extend(_run_check(name, curve, n))
        log.info("%s done in %.2fs", name, time.time() - t)
    ok = all(r.passed for r in results)
    if args.format == "json":
        doc = [{"check": r.name, "passed": r.passed, "witness": r.witness(), "detail": r.detail}
               for r in results]
        _emit(args, json.dumps({"passed": ok, "results": doc}, indent=1))
    else:
        lines = []
        for r in results:
            if r.passed:
                lines.append(f"PASS {r.name}")
            else:
                extra = f" ({r.detail})" if r.detail else ""
                lines.append(f"FAIL {r.name}{extra}; witness monomial {r.witness()}")
        _emit(args, "\n".join(lines))
    return 0 if ok else 1


def run_omega_oracle(args) -> int:
    from .oracle import NumericOmega, cross_check_omega
    curve = _curve(args)
    n = _n(args)
    if n > NumericOmega.MAX_N:
        raise InputError(f"the numeric oracle supports n <= {NumericOmega.MAX_N}")
    if args.samples < 1:
        raise InputError("--samples must be positive")
    if not args.tol > 0:
        raise InputError("--tol must be positive")
    rep = cross_check_omega(curve, n, args.samples, args.tol, seed=args.seed)
    if args.format == "json":
        _emit(args, json.dumps(rep.as_dict(), indent=1))
    else:
        verdict = "PASS" if rep.passed else "FAIL"
        _emit(args, f"{verdict} oracle n={n} samples={args.samples} "
                    f"max relative deviation {rep.max_deviation:.3e} (tol {args.tol:g})")
    return 0 if rep.passed else 1


def _parse_nu(text: str) -> tuple:
    try:
        parts = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"--nu must be comma separated integers, got {text!r}") from None
    if any(p < 1 for p in parts):
        raise InputError("--nu parts must be positive")
    return parts


def run_partitions_check(args) -> int:
    from . import partitions as P
    single = [args.s, args.k, args.l, args.nu]
    if args.s_max is not None:
        if any(v is not None for v in single):
            raise InputError("use either --s-max or --s/--k/--l/--nu")
        if args.s_max < 1:
            raise InputError("--s-max must be at least 1")
        t = time.time()
        rep = P.exhaustive_identity_check(args.s_max)
        log.info("checked %d instances in %.2fs", rep.instance_count, time.time() - t)
        if args.format == "json":
            _emit(args, json.dumps(rep.as_dict(), indent=1))
        else:
            verdict = "PASS" if not rep.failures else "FAIL"
            lines = [f"{verdict} sMax={args.s_max} instances={rep.instance_count} "
                     f"failures={len(rep.failures)}"]
            lines += [f"  {f}" for f in sorted(rep.failures)]
            _emit(args, "\n".join(lines))
        return 0 if not rep.failures else 1
    if any(v is None for v in single):
        raise InputError("partitions-check needs --s, --k, --l and --nu (or --s-max)")
    try:
        inst = P.IdentityInstance(args.s, args.k, args.l, _parse_nu(args.nu))
    except ValueError as e:
        raise InputError(str(e)) from None
    rhs = P.identity_rhs(inst)
    target = factorial(inst.s)
    ok = rhs == target
    if args.format == "json":
        _emit(args, json.dumps({"s": inst.s, "k": inst.k, "l": inst.l, "nu": list(inst.nu),
                                "rhs": rhs, "target": target, "passed": ok}))
    else:
        _emit(args, f"{rhs} {'=' if ok else '!='} {inst.s}!")
    return 0 if ok else 1


def run_partitions_poly_check(args) -> int:
    from . import partitions as P
    if args.m_max is None:
        raise InputError("--m-max is required")
    if args.m_max < 0:
        raise InputError("--m-max must be non-negative")
    res = P.poly_identity_check(args.m_max, seed=args.seed)
    ok = all(v["zero"] and v["difference_equation"] for v in res.values())
    if args.format == "json":
        _emit(args, json.dumps({"mMax": args.m_max, "passed": ok,
                                "results": {str(k): v for k, v in res.items()}}, indent=1))
    else:
        lines = [f"{'PASS' if v['zero'] and v['difference_equation'] else 'FAIL'} M={m} "
                 f"L-R zero={v['zero']} difference equation={v['difference_equation']}"
                 for m, v in res.items()]
        _emit(args, "\n".join(lines))
    return 0 if ok else 1


RUNNERS = {
    "omega-compute": run_omega_compute,
    "omega-check": run_omega_check,
    "omega-oracle": run_omega_oracle,
    "partitions-check": run_partitions_check,
    "partitions-poly-check": run_partitions_poly_check,
}


def _setup_logging(verbose: bool) -> None:
    for h in list(log.handlers):
        log.removeHandler(h)
    h = logging.StreamHandler(sys.stderr)
    h.setFormatter(logging.Formatter("%(message)s"))
    log.addHandler(h)
    log.setLevel(logging.INFO if verbose else logging.WARNING)
    log.propagate = False


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0) and 2
    _setup_logging(args.verbose)
    try:
        return RUNNERS[args.command](args)
    except (InputError, FormatError, CurveError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
