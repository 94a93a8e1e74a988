"""Command-line front end.

Exit codes: 0 success, 1 a checked property failed, 2 usage or parse error.
Flags fall back to the environment variables KLEIN_WORKERS and
KLEIN_DEGREE_CAP.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass

from . import __version__
from .classify import (DEFAULT_SEARCH_CAP, DEFAULT_SINGLE_DEGREE_CAP, SearchConfig,
                       enumerate_single_degree_ideals, is_orbit_generated, search_degree)
from .families import admissible_pairs, family_c_count, pair_count, pair_density
from .ideals import (GradedIdeal, IdealError, invariant_generating_system, is_c3_invariant,
                     is_parameter_ideal, is_steenrod_closed, rep_type)
from .poly import MAX_DEGREE, DegreeCapError, PolySyntaxError, render
from .selftest import SUITES, Ops, corrupted_total_sq, run_suites

EXIT_OK, EXIT_FAILURE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class Config:
    degree_cap: int = DEFAULT_SEARCH_CAP
    worker_count: int = 1
    output_format: str = "text"
    seed: int = 0

    def __post_init__(self):
        if self.worker_count < 1:
            raise UsageError("worker count must be at least 1")
        if not 1 <= self.degree_cap <= MAX_DEGREE:
            raise UsageError(f"degree cap must lie in 1..{MAX_DEGREE}")
        if self.output_format not in ("text", "json", "csv"):
            raise UsageError(f"unknown output format {self.output_format!r}")

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> Config:
        def pick(value, env, default):
            if value is not None:
                return value
            raw = os.environ.get(env)
            if raw is None:
                return default
            try:
                return int(raw)
            except ValueError:
                raise UsageError(f"{env}={raw!r} is not an integer") from None

        return cls(
            degree_cap=pick(getattr(args, "degree_cap", None), "KLEIN_DEGREE_CAP", DEFAULT_SEARCH_CAP),
            worker_count=pick(getattr(args, "workers", None), "KLEIN_WORKERS", 1),
            output_format=args.format,
            seed=getattr(args, "seed", None) or 0,
        )


def parse_degrees(text: str) -> list[int]:
    """'5' -> [5]; '1..20' -> [1, ..., 20]; '1,2,8' -> [1, 2, 8]."""
    out = []
    try:
        for piece in text.split(","):
            if ".." in piece:
                lo, hi = piece.split("..")
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(piece))
    except ValueError:
        raise UsageError(f"bad degree range {text!r}") from None
    if not out or min(out) < 1:
        raise UsageError(f"degrees must be positive: {text!r}")
    return out


def _mark(flag) -> str:
    if flag is None:
        return "n/a"
    return "✓" if flag else "✗"


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


# -- subcommands --------------------------------------------------------------------


def check_ideal_report(generators: list[str]) -> dict:
    J = GradedIdeal(generators)
    try:
        parameter = is_parameter_ideal(J)
        note = None
    except IdealError as exc:
        parameter, note = False, str(exc)
    invariant = is_c3_invariant(J)
    closure = is_steenrod_closed(J)
    rtype = inv_system = None
    if parameter and invariant:
        rtype = rep_type(J)
        pair = invariant_generating_system(J)
        inv_system = None if pair is None else [render(p) for p in pair]
    return {
        "ideal": J.to_json(),
        "parameter": parameter,
        "parameter_note": note,
        "c3_invariant": invariant,
        "steenrod_closed": closure.closed,
        "rep_type": rtype,
        "orbit_generated": is_orbit_generated(J),
        "invariant_generating_system": inv_system,
        "certificates": [
            {"generator": render(g), "sq": render_sq(g), **c.to_json()}
            for g, c in zip(J.generators, closure.certificates)
        ],
    }


def render_sq(g) -> str:
    from .steenrod import total_sq

    return render(total_sq(g))


def cmd_check_ideal(args, config: Config) -> int:
    report = check_ideal_report(args.generators)
    if config.output_format == "json":
        _emit(json.dumps(report, indent=2))
        return EXIT_OK
    lines = [
        f"ideal                <{', '.join(report['ideal']['generators'])}>",
        f"parameter            {_mark(report['parameter'])}"
        + (f"  ({report['parameter_note']})" if report["parameter_note"] else ""),
        f"c3-invariant         {_mark(report['c3_invariant'])}",
        f"steenrod-closed      {_mark(report['steenrod_closed'])}",
        f"rep-type             {report['rep_type'] or 'n/a'}",
        f"orbit-generated      {_mark(report['orbit_generated'])}",
    ]
    if report["rep_type"] is not None:
        inv = report["invariant_generating_system"]
        lines.append(f"invariant generators {', '.join(inv) if inv else 'none exist'}")
    for c in report["certificates"]:
        if c["member"]:
            terms = " + ".join(f"({coef})*({gen})" for coef, gen
                               in zip(c["coefficients"], report["ideal"]["generators"])
                               if coef != "0") or "0"
            lines.append(f"  Sq({c['generator']}) = {terms}")
        else:
            lines.append(f"  Sq({c['generator']}) = {c['sq']} is not in the ideal")
    _emit("\n".join(lines))
    return EXIT_OK


def cmd_search(args, config: Config) -> int:
    degrees = parse_degrees(args.degrees)
    too_big = [n for n in degrees if n > config.degree_cap]
    if too_big:
        raise UsageError(f"degrees {too_big} exceed the degree cap {config.degree_cap}")
    search_config = SearchConfig(config.degree_cap, config.worker_count, not args.no_kernel_filter)
    reports = [search_degree(n, search_config) for n in degrees]
    if config.output_format == "json":
        _emit(json.dumps([r.to_json() for r in reports], indent=2))
    elif config.output_format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["degree", "candidates", "after_kernel", "after_coprime", "survivors"])
        for r in reports:
            w.writerow([r.degree, r.candidates, r.after_kernel, r.after_coprime,
                        " ; ".join(render(c.v) for c in r.survivors)])
        _emit(buf.getvalue())
    else:
        for r in reports:
            surv = ", ".join(render(c.v) for c in r.survivors) or "none"
            _emit(f"degree {r.degree:3d}: candidates {r.candidates:8d}  after kernel {r.after_kernel:6d}"
                  f"  after coprime {r.after_coprime:6d}  survivors: {surv}")
        with_survivors = [r.degree for r in reports if r.survivors]
        _emit(f"degrees with survivors: {with_survivors}")
    return EXIT_OK


def cmd_single_degree(args, config: Config) -> int:
    cap = max(args.degree, DEFAULT_SINGLE_DEGREE_CAP) if args.force else DEFAULT_SINGLE_DEGREE_CAP
    ideals = enumerate_single_degree_ideals(args.degree, cap=cap, workers=config.worker_count)
    hits = [s for s in ideals if s.all_flags]
    rows = {
        "degree": args.degree,
        "subspaces": len(ideals),
        "parameter": sum(s.parameter for s in ideals),
        "c3_invariant": sum(s.c3_invariant for s in ideals),
        "steenrod_closed": sum(s.steenrod_closed for s in ideals),
        "orbit_generated": sum(s.orbit_generated for s in ideals),
        "all_three": [[render(s.x), render(s.y)] for s in hits],
    }
    if config.output_format == "json":
        _emit(json.dumps(rows, indent=2))
    else:
        for k, v in rows.items():
            _emit(f"{k:16s} {v}")
    return EXIT_OK


def cmd_admissible(args, config: Config) -> int:
    pairs = admissible_pairs(args.bound)
    if config.output_format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["m_plus_1", "n_plus_1", "families"])
        for p in pairs:
            w.writerow([p.low, p.high, p.families_str()])
        _emit(buf.getvalue())
    elif config.output_format == "json":
        _emit(json.dumps([{"m_plus_1": p.low, "n_plus_1": p.high, "families": sorted(p.families)}
                          for p in pairs], indent=2))
    else:
        for p in pairs:
            _emit(f"({p.low}, {p.high})  {p.families_str()}")
        _emit("family B admits i = 0 for s = 0 (the bound i < 2^(s-1) is read over the rationals)")
    return EXIT_OK


def cmd_density(args, config: Config) -> int:
    rows = []
    for r in args.r:
        if r < 0:
            raise UsageError("r must be nonnegative")
        d = pair_density(r)
        rows.append({"r": r, "count": pair_count(r), "grid": (r + 1) ** 2,
                     "density": float(d), "fraction": str(d), "family_c": family_c_count(r)})
    if config.output_format == "json":
        _emit(json.dumps(rows, indent=2))
    elif config.output_format == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0]) if rows else ["r"], lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        _emit(buf.getvalue())
    else:
        for row in rows:
            _emit(f"r = {row['r']:6d}  pairs {row['count']:8d} / {row['grid']:10d}"
                  f"  density {row['density']:.6f}  family C {row['family_c']}")
    return EXIT_OK


def cmd_selftest(args, config: Config) -> int:
    ops = Ops(corrupted_total_sq) if args.simulate_corruption else Ops()
    try:
        results = run_suites(args.suite, seed=config.seed, cases=args.cases, ops=ops)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    failed = [r for r in results if not r.ok]
    if config.output_format == "json":
        _emit(json.dumps({"seed": config.seed, "cases": args.cases, "suites": [
            {"name": r.name, "ok": r.ok, "failures": len(r.failures), "examples": r.failures[:3]}
            for r in results]}, indent=2))
    else:
        _emit(f"seed {config.seed}, {args.cases} cases per suite")
        for r in results:
            status = "PASS" if r.ok else f"FAIL ({len(r.failures)})"
            _emit(f"{status:10s} {r.name}")
            for msg in r.failures[:3]:
                _emit(f"           {msg}")
        _emit(f"{len(results) - len(failed)}/{len(results)} suites passed")
    return EXIT_FAILURE if failed else EXIT_OK


# -- wiring ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--workers", type=int, default=None,
                        help="worker processes (env KLEIN_WORKERS, default 1)")
    common.add_argument("--degree-cap", type=int, default=None,
                        help=f"largest searchable degree (env KLEIN_DEGREE_CAP, default {DEFAULT_SEARCH_CAP})")
    common.add_argument("--seed", type=int, default=None)

    parser = argparse.ArgumentParser(
        prog="klein",
        description="Steenrod-closed C3-invariant parameter ideals in F2[a,b].")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-ideal", parents=[common],
                       help="flags and certificates for an ideal given by generators")
    p.add_argument("generators", nargs="+", help="homogeneous generators, e.g. 'a^2*b + a*b^2'")
    p.set_defaults(func=cmd_check_ideal)

    p = sub.add_parser("search", parents=[common],
                       help="exhaustive search for Steenrod-closed orbit ideals by degree")
    p.add_argument("--degrees", default="1..20", help="'N', 'A..B' or a comma list")
    p.add_argument("--no-kernel-filter", action="store_true",
                   help="enumerate all normalized candidates instead of the orbit-sum kernel slice")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("single-degree", parents=[common],
                       help="all ideals spanned by a 2-dimensional subspace of one degree")
    p.add_argument("degree", type=int)
    p.add_argument("--force", action="store_true", help=f"allow degrees above {DEFAULT_SINGLE_DEGREE_CAP}")
    p.set_defaults(func=cmd_single_degree)

    p = sub.add_parser("admissible", parents=[common], help="admissible parameter degree pairs")
    p.add_argument("bound", type=int)
    p.set_defaults(func=cmd_admissible)

    p = sub.add_parser("density", parents=[common], help="share of admissible grid points")
    p.add_argument("r", type=int, nargs="+")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("selftest", parents=[common], help="run the randomized identity suites")
    p.add_argument("--suite", action="append", choices=sorted(SUITES),
                   help="run only this suite (repeatable)")
    p.add_argument("--cases", type=int, default=1000)
    p.add_argument("--simulate-corruption", action="store_true",
                   help="negative control: flip one Steenrod coefficient")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = Config.from_args(args)
        return args.func(args, config)
    except (UsageError, PolySyntaxError, IdealError, DegreeCapError) as exc:
        print(f"klein {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
