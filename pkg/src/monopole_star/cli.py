"""Command-line entry point: ``monopole-star expand | verify | eval``.

All commands print one JSON document.  Exit status is 0 when every requested
check passes, 1 when a check fails and 2 for configuration errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from . import verify as V
from .families import parse_symbol
from .parallel import thread_count
from .representation import KernelPoint
from .starproduct import bidiff_operators, bind_mu, star

SCHEMA_VERSION = 1
EXIT_PASS, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2
CHECKS = ("assoc", "kontsevich", "cocycle", "weakrep", "multiplier", "zassenhaus")


class ConfigError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="monopole-star", description="Star product for the monopole phase space.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--output", help="also write the JSON report to this file")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("expand", help="bidifferential operators B_0..B_N")
    e.add_argument("--order", type=int, required=True)
    mode = e.add_mutually_exclusive_group()
    mode.add_argument("--mu-symbolic", dest="mu", action="store_const", const="symbolic")
    mode.add_argument("--mu-bind", dest="mu", action="store_const", const="bound",
                      help="substitute mu = hbar/2 and regroup by total hbar order")
    e.set_defaults(mu="symbolic")

    v = sub.add_parser("verify", help="run a verification")
    v.add_argument("check", choices=CHECKS + ("all",))
    v.add_argument("--order", type=int, default=2, help="hbar order for assoc")
    v.add_argument("--family", default="acceptance", help="family name or list like 'p1,q2*r^-1'")
    v.add_argument("--samples", type=int, default=None)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--tol", type=float, default=V.TOL)
    v.add_argument("--orders", type=_int_list, default=[1, 2], help="truncation orders for multiplier")
    v.add_argument("--hbars", type=_float_list, default=[0.1, 0.05, 0.025])
    v.add_argument("--hbar", type=float, default=0.5, help="hbar for the T-product check")
    v.add_argument("--degree", type=int, default=6, help="free-algebra degree for zassenhaus")
    v.add_argument("--stretch", action="store_true", help="with 'all', also check assoc at order 3")

    ev = sub.add_parser("eval", help="evaluate a kernel or a star product")
    ev.add_argument("what", choices=("kernel", "star"))
    ev.add_argument("--point", help="kernel point as JSON with keys p', q', p'', q'', p, q, hbar")
    ev.add_argument("--f", help="left symbol, e.g. 'p1*q2'")
    ev.add_argument("--g", help="right symbol")
    ev.add_argument("--order", type=int, default=2)
    ev.add_argument("--mu-bind", action="store_true")
    ev.add_argument("--tol", type=float, default=V.TOL)
    return p


def _check_config(args) -> None:
    if getattr(args, "order", 0) is not None and getattr(args, "order", 0) < 0:
        raise ConfigError("order must be non-negative")
    if getattr(args, "samples", None) is not None and args.samples < 1:
        raise ConfigError("samples must be positive")
    if getattr(args, "hbars", None) and any(h <= 0 for h in args.hbars):
        raise ConfigError("hbar values must be positive")
    if getattr(args, "hbar", 1.0) <= 0:
        raise ConfigError("hbar must be positive")
    if getattr(args, "orders", None) and any(n < 1 for n in args.orders):
        raise ConfigError("truncation orders must be at least 1")
    thread_count()


def _samples(args, default: int) -> int:
    return args.samples if args.samples is not None else default


def _verify_one(check: str, args) -> dict:
    if check == "assoc":
        return V.assoc_report(args.order, args.family)
    if check == "kontsevich":
        return V.kontsevich_report(args.family)
    if check == "cocycle":
        return V.cocycle_report(_samples(args, 100), args.seed, args.tol)
    if check == "weakrep":
        return V.weakrep_report(_samples(args, 100), args.seed, args.tol, args.hbar)
    if check == "multiplier":
        return V.multiplier_report(args.orders, args.hbars, _samples(args, 10), args.seed)
    if check == "zassenhaus":
        return V.zassenhaus_report(args.degree, _samples(args, 20), args.seed)
    raise ConfigError(f"unknown check {check!r}")


def _verify(args) -> dict:
    if args.check != "all":
        return _verify_one(args.check, args)
    parts = {c: _verify_one(c, args) for c in CHECKS}
    parts["expand"] = V.expand_report(2)
    parts["kernel"] = V.kernel_consistency_report(seed=args.seed, tol=args.tol)
    out = {"inputs": {"seed": args.seed, "family": args.family, "order": args.order},
           "checks": parts, "pass": all(p["pass"] for p in parts.values())}
    if args.stretch:
        stretch = V.assoc_report(3, args.family)
        stretch["blocking"] = False
        out["stretch"] = {"assoc_order_3": stretch}
    out["residuals"] = {name: p["pass"] for name, p in parts.items()}
    return out


def _eval(args) -> dict:
    if args.what == "kernel":
        if not args.point:
            raise ConfigError("eval kernel needs --point")
        try:
            point = KernelPoint.from_json(json.loads(args.point))
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"bad kernel point: {exc}") from exc
        return V.kernel_report(point, args.tol)
    if not args.f or not args.g:
        raise ConfigError("eval star needs --f and --g")
    try:
        f, g = parse_symbol(args.f), parse_symbol(args.g)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    if args.mu_bind:
        ops = bind_mu(bidiff_operators(args.order))
        coeffs = [op.apply(f, g) for op in ops]
    else:
        coeffs = list(star(f, g, args.order).coeffs)
    return {"inputs": {"f": args.f, "g": args.g, "order": args.order,
                       "mu": "bound" if args.mu_bind else "symbolic"},
            "result": [{"order": n, "terms": c.to_json(), "text": str(c)} for n, c in enumerate(coeffs)],
            "pass": True}


def run(argv=None) -> tuple[int, dict]:
    """Parse ``argv`` and run; returns (exit code, report)."""
    try:
        args = build_parser().parse_args(argv)
        _check_config(args)
        if args.command == "expand":
            report = V.expand_report(args.order, args.mu)
        elif args.command == "verify":
            report = _verify(args)
        else:
            report = _eval(args)
    except (ConfigError, ValueError) as exc:
        return EXIT_CONFIG, {"schema_version": SCHEMA_VERSION, "error": str(exc), "pass": False}
    out = {"schema_version": SCHEMA_VERSION, "command": args.command}
    out.update(report)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(dumps(out))
    return (EXIT_PASS if out["pass"] else EXIT_FAIL), out


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def main(argv=None) -> int:
    code, report = run(argv)
    sys.stdout.write(dumps(report))
    if code == EXIT_CONFIG:
        sys.stderr.write(f"monopole-star: {report['error']}\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
