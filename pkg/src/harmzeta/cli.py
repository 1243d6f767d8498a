"""Command-line front end: ``compute``, ``verify`` and ``grid``.

Exit codes: 0 all checks pass, 1 an identity failed, 2 usage error,
3 a tolerance could not be reached.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import fields

from .constants import registry
from .errors import (ConstantsMismatch, DomainError, NonConvergence, TailBoundViolation,
                     ToleranceUnreachable)
from .genfun import GENFUN_IDENTITIES, GridSpec, lookup, run_grid
from .report import SuiteReport, render
from .suites import SUITES, RunConfig, compute, reference, run_suites

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_UNREACHABLE = 3


class UsageError(Exception):
    pass


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of numbers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="harmzeta", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="evaluate M or M1 by one route or all routes")
    c.add_argument("constant", choices=["M", "M1"])
    c.add_argument("--method", default="all", help="route id (e.g. thm1.a, prop3.l) or 'all'")
    c.add_argument("--tol", type=float)
    c.add_argument("--max-terms", type=int)
    c.add_argument("--format", choices=["json", "csv", "text"])
    c.add_argument("--out")
    c.add_argument("--config")

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", action="append",
                   help=f"suite name, repeatable or comma-separated: {', '.join(SUITES + ('all',))}")
    v.add_argument("--tol", type=float)
    v.add_argument("--max-terms", type=int)
    v.add_argument("--format", choices=["json", "csv", "text"])
    v.add_argument("--out")
    v.add_argument("--config")
    v.add_argument("--seed", type=int)

    g = sub.add_parser("grid", help="run one generating-function identity on a user grid")
    g.add_argument("identity", help=f"one of {', '.join(sorted(GENFUN_IDENTITIES))}")
    g.add_argument("--a", type=_float_list, default=None, help="comma-separated a values")
    g.add_argument("--xfrac", type=_float_list, default=None,
                   help="comma-separated x fractions of the disk radius, each in (-1, 1)")
    g.add_argument("--tol", type=float)
    g.add_argument("--format", choices=["json", "csv", "text"])
    g.add_argument("--out")
    g.add_argument("--config")
    return p


def load_config(path: str | None, args: argparse.Namespace) -> RunConfig:
    """Config file values first, then any flags given on the command line."""
    data = {}
    if path:
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {path!r}: {exc}") from None
        if not isinstance(data, dict):
            raise UsageError(f"config {path!r} must hold a JSON object")
        known = {f.name for f in fields(RunConfig)}
        unknown = set(data) - known
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
    flags = {
        "tolerance": getattr(args, "tol", None),
        "max_terms": getattr(args, "max_terms", None),
        "output_path": getattr(args, "out", None),
        "output_format": getattr(args, "format", None),
        "seed": getattr(args, "seed", None),
    }
    suites = getattr(args, "suite", None)
    if suites:
        flags["suites"] = [s.strip() for item in suites for s in item.split(",") if s.strip()]
    data.update({k: v for k, v in flags.items() if v is not None})
    if isinstance(data.get("suites"), str):
        data["suites"] = [data["suites"]]
    try:
        return RunConfig(**data)
    except (DomainError, TypeError) as exc:
        raise UsageError(str(exc)) from None


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_compute(args, cfg: RunConfig) -> int:
    try:
        rows = compute(args.constant, args.method, cfg.tolerance, cfg.max_terms)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    ref = reference(args.constant)
    fmt = args.format or "text"
    if fmt == "json":
        payload = [{"method": r.method, "value": r.value, "err_bound": r.err_bound,
                    "terms": r.terms_used, "deviation": r.value - ref} for r in rows]
        text = json.dumps({"constant": args.constant, "reference": ref, "rows": payload},
                          indent=2) + "\n"
    elif fmt == "csv":
        lines = ["method,value,err_bound,terms,deviation"]
        lines += [f"{r.method},{r.value!r},{r.err_bound!r},{r.terms_used},{r.value - ref!r}"
                  for r in rows]
        text = "\n".join(lines) + "\n"
    else:
        lines = [f"{args.constant} reference {ref!r}",
                 f"{'method':<12} {'value':>20} {'err_bound':>10} {'terms':>8} {'deviation':>10}"]
        lines += [f"{r.method:<12} {r.value:>20.17g} {r.err_bound:>10.2e} {r.terms_used:>8d} "
                  f"{r.value - ref:>10.2e}" for r in rows]
        if len(rows) > 1:
            spread = max(r.value for r in rows) - min(r.value for r in rows)
            lines.append(f"spread {spread:.3e}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out or cfg.output_path)
    return EXIT_OK


def cmd_verify(args, cfg: RunConfig) -> int:
    report = run_suites(cfg)
    _emit(render(report, cfg.output_format), cfg.output_path)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_grid(args, cfg: RunConfig) -> int:
    try:
        ident = lookup(args.identity)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    fractions = args.xfrac
    if fractions is None:
        fractions = [0.1, 0.5, 0.9] if ident.positive_only else [-0.9, -0.5, -0.1, 0.1, 0.5, 0.9]
    try:
        grid = GridSpec(args.a or [1.0], fractions, ident.radius_rule)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    t0 = time.perf_counter()
    gen = run_grid(ident.identity_id, grid, args.tol)
    wall = int(round((time.perf_counter() - t0) * 1000))
    skipped = [(f"{gen.identity_id}@x={x:g}" if a is None else f"{gen.identity_id}@a={a:g},x={x:g}",
                why) for a, x, why in gen.skipped]
    report = SuiteReport(f"grid:{gen.identity_id}", list(gen.points),
                         {"identity": gen.identity_id, "a": list(grid.a_values),
                          "xfrac": list(grid.x_fractions), "tolerance": gen.tolerance},
                         wall, skipped)
    _emit(render(report, cfg.output_format), cfg.output_path)
    return EXIT_OK if gen.passed else EXIT_FAIL


COMMANDS = {"compute": cmd_compute, "verify": cmd_verify, "grid": cmd_grid}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        registry()
    except ConstantsMismatch as exc:
        print(f"harmzeta: constants check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    try:
        cfg = load_config(args.config, args)
        return COMMANDS[args.command](args, cfg)
    except UsageError as exc:
        print(f"harmzeta: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ToleranceUnreachable, NonConvergence, TailBoundViolation) as exc:
        print(f"harmzeta: tolerance unreachable: {exc}", file=sys.stderr)
        return EXIT_UNREACHABLE


if __name__ == "__main__":
    sys.exit(main())
