"""Command line interface for constructing, checking and searching pairs.

Subcommands: construct, verify, profile, scan, fit, search, frontier.

Exit codes: 0 when every check passed, 1 when a mathematical claim failed
(a shared difference, a violated bound), 2 for usage errors and infeasible
requests.  Data files are byte-reproducible: deterministic key order, big
integers as decimal strings, no timestamps.  Each output file is
accompanied by a ``<name>.manifest.json`` carrying the tool version, the
resolved arguments and the wall clock, so provenance lives next to the
data instead of inside it.
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

from . import __version__
from .analysis import (CLOSED_FORM, ESTIMATED, SpInPoint, base_k_point, dec_str,
                       frontier, gap_bound_check, geometric_grid, in_estimate,
                       merge_grids, point_from_profile, pow2_point, power_grid,
                       probe_grid, profile, root_bound_check, scaled_ratio_scan,
                       sp_estimate)
from .mixedradix import (EVEN, GROWTH, ODD, ExtendSpecError,
                         InfeasibleTargetError, MixedRadixSpec, SpecSide,
                         _extend_places, extend_spec, fit_moduli,
                         mixed_radix_pair, powers_of_two_pair, side_max_below,
                         uniform_base_pair, witness_probe)
from .search import (Objective, SearchProblem, branch_and_bound,
                     exhaustive_search)
from .sets import (IntSet, UncertifiedRegionError, are_disjoint,
                   pair_bounds_check, shared_difference)


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _write_output(args, path: str, text: str) -> None:
    """Write a data file plus its manifest sidecar."""
    Path(path).write_text(text)
    arguments = {k: str(v) for k, v in sorted(vars(args).items())
                 if k not in ("func", "command") and v is not None}
    manifest = {
        "tool": "disjointpairs",
        "version": __version__,
        "command": args.command,
        "arguments": arguments,
        "output": Path(path).name,
        "wall_clock_utc": datetime.now(timezone.utc).isoformat(),
    }
    Path(path + ".manifest.json").write_text(_dump_json(manifest))


def _parse_int_list(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t.strip()]


def _parse_fraction_list(text: str) -> list[Fraction]:
    return [Fraction(t.strip()) for t in text.split(",") if t.strip()]


def _load_json(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def _load_pair(path: str):
    obj = _load_json(path)
    if "a" not in obj or "b" not in obj:
        raise ValueError(f"{path}: expected a pair file with 'a' and 'b'")
    return IntSet.from_json(obj["a"]), IntSet.from_json(obj["b"]), obj


def _pair_json(a: IntSet, b: IntSet, meta: dict) -> dict:
    out = dict(meta)
    out["a"] = a.to_json()
    out["b"] = b.to_json()
    return out


# ---------------------------------------------------------------------------
# construct

def cmd_construct(args) -> int:
    family = args.family
    if family == "pow2":
        if args.limit is None:
            raise ValueError("--family pow2 needs --limit")
        a, b = powers_of_two_pair(args.limit)
        meta = {"family": "pow2"}
    elif family == "base":
        if args.k is None or args.limit is None:
            raise ValueError("--family base needs --k and --limit")
        a, b = uniform_base_pair(args.k, args.limit)
        meta = {"family": f"base-{args.k}"}
    elif family == "mixed":
        if args.moduli is None or args.limit is None:
            raise ValueError("--family mixed needs --moduli and --limit")
        spec = MixedRadixSpec(_parse_int_list(args.moduli))
        a, b = mixed_radix_pair(spec, args.limit)
        meta = {"family": "mixed", "spec": spec.to_json()}
    elif family == "witness":
        if args.seed_moduli is None or args.k is None:
            raise ValueError("--family witness needs --seed-moduli and --k")
        spec = MixedRadixSpec(_parse_int_list(args.seed_moduli))
        spec = _extend_places(spec, 2 * args.k + 1)
        y = side_max_below(spec, EVEN, 2 * args.k) + spec.places[2 * args.k]
        limit = args.limit if args.limit is not None else 2 * y
        spec = extend_spec(spec, limit)
        a, b = mixed_radix_pair(spec, limit)
        meta = {"family": f"witness-{args.k}", "spec": spec.to_json(),
                "probe": str(y)}
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(f"unknown family {family}")
    _write_output(args, args.out, _dump_json(_pair_json(a, b, meta)))
    print(f"construct: {meta['family']} limit={a.limit} "
          f"|A|={len(a)} |B|={len(b)} -> {args.out}")
    return 0


# ---------------------------------------------------------------------------
# verify

def cmd_verify(args) -> int:
    a, b, _ = _load_pair(args.pair)
    if not are_disjoint(a, b):
        print(f"verify: FAIL shared difference {shared_difference(a, b)}",
              file=sys.stderr)
        return 1
    top = min(a.limit, b.limit)
    grid = geometric_grid(1, top, args.ratio) if top >= 1 else []
    rows = []
    violations = []
    for x in grid:
        rep = pair_bounds_check(a, b, x)
        rows.append({"x": str(x), "countA": rep.count_a, "countB": rep.count_b,
                     "product_margin": str(rep.product_margin),
                     "packing_margin": str(rep.packing_margin)})
        violations.extend(rep.violations)
    if args.report:
        _write_output(args, args.report, _dump_json({
            "disjoint": True, "grid_points": len(grid),
            "rows": rows, "violations": list(violations)}))
    if violations:
        for v in violations:
            print(f"verify: FAIL {v}", file=sys.stderr)
        return 1
    print(f"verify: ok (disjoint, both bounds hold at {len(grid)} grid points "
          f"up to {top})")
    return 0


# ---------------------------------------------------------------------------
# profile and scan

def _counters_from_args(args):
    """Pair of counting views plus metadata, from --pair or --spec."""
    if getattr(args, "pair", None):
        a, b, meta = _load_pair(args.pair)
        spec = None
        if "spec" in meta:
            spec = MixedRadixSpec.from_json(meta["spec"])
        return (a, b), spec, meta.get("family", "pair")
    if getattr(args, "spec", None):
        spec = MixedRadixSpec.from_json(_load_json(args.spec))
        return (SpecSide(spec, EVEN), SpecSide(spec, ODD)), spec, "spec"
    raise ValueError("need --pair or --spec")


def _grid_from_args(args, spec) -> list[int]:
    grids = []
    for text in args.grid:
        kind, _, rest = text.partition(":")
        if kind == "geometric":
            parts = rest.split(":")
            if len(parts) not in (2, 3):
                raise ValueError(f"bad grid '{text}'")
            ratio = Fraction(parts[2]) if len(parts) == 3 else Fraction(21, 20)
            grids.append(geometric_grid(int(parts[0]), int(parts[1]), ratio))
        elif kind == "points":
            grids.append(_parse_int_list(rest))
        elif kind == "powers":
            parts = rest.split(":")
            if len(parts) != 3:
                raise ValueError(f"bad grid '{text}'")
            grids.append(power_grid(int(parts[0]), int(parts[1]), int(parts[2])))
        elif kind == "probes":
            parts = rest.split(":")
            if len(parts) != 2:
                raise ValueError(f"bad grid '{text}'")
            if spec is None:
                raise ValueError("grid 'probes' needs a digit-system source "
                                 "(--spec, or a pair built from one)")
            ms = spec.moduli
            rule = ms[0] if all(m == ms[0] for m in ms) else GROWTH
            grids.append(probe_grid(spec, int(parts[0]), int(parts[1]), rule))
        else:
            raise ValueError(f"unknown grid kind '{kind}'")
    return merge_grids(*grids)


PROFILE_HEADER = "x,countA,countB,product_ratio_num,product_ratio_den,in_ratio"


def cmd_profile(args) -> int:
    counters, spec, family = _counters_from_args(args)
    grid = _grid_from_args(args, spec)
    if not grid:
        raise ValueError("empty grid")
    top = min(counters[0].limit, counters[1].limit)
    skipped = [x for x in grid if x > top]
    grid = [x for x in grid if x <= top]
    prof = profile(counters, grid, workers=args.workers)
    lines = [PROFILE_HEADER]
    for r in prof.rows:
        lines.append(f"{r.x},{r.count_a},{r.count_b},"
                     f"{r.product_ratio.numerator},{r.product_ratio.denominator},"
                     f"{dec_str(r.in_ratio)}")
    _write_output(args, args.csv, "\n".join(lines) + "\n")
    if args.report:
        sp = sp_estimate(prof)
        inw = in_estimate(prof, args.tail_start)
        _write_output(args, args.report, _dump_json({
            "family": family,
            "rows": len(prof.rows),
            "sp_estimate": {"num": str(sp.numerator), "den": str(sp.denominator)},
            "in_estimate": dec_str(inw),
            "tail_start": str(args.tail_start),
            "skipped": [str(x) for x in skipped],
        }))
    print(f"profile: {len(prof.rows)} rows -> {args.csv}")
    if skipped:
        print(f"profile: {len(skipped)} grid points past certified limit {top} "
              f"skipped", file=sys.stderr)
        if not args.allow_partial:
            return 2
    return 0


SCAN_HEADER = "c_num,c_den,point,countA,countB,norm_num,norm_den"


def cmd_scan(args) -> int:
    counters, _, family = _counters_from_args(args)
    cs = _parse_fraction_list(args.c)
    result = scaled_ratio_scan(counters, args.anchor, cs)
    lines = [SCAN_HEADER]
    for r in result.rows:
        lines.append(f"{r.c.numerator},{r.c.denominator},{r.point},"
                     f"{r.count_a},{r.count_b},"
                     f"{r.norm.numerator},{r.norm.denominator}")
    _write_output(args, args.csv, "\n".join(lines) + "\n")
    if args.report:
        _write_output(args, args.report, _dump_json({
            "family": family,
            "anchor": str(result.anchor),
            "half_a": {"num": str(result.half_a.numerator),
                       "den": str(result.half_a.denominator)},
            "half_b": {"num": str(result.half_b.numerator),
                       "den": str(result.half_b.denominator)},
        }))
    print(f"scan: anchor={result.anchor} rows={len(result.rows)} "
          f"half_a={result.half_a} half_b={result.half_b} -> {args.csv}")
    return 0


# ---------------------------------------------------------------------------
# fit

def cmd_fit(args) -> int:
    result = fit_moduli(_parse_int_list(args.targets))
    _write_output(args, args.out, _dump_json(result.to_json()))
    print(f"fit: moduli {result.spec.moduli} -> {args.out}")
    for w in result.windows:
        print(f"fit: target {w.target} in window [{w.lower}, {w.upper}] "
              f"ratio >= {w.bound}")
    return 0


# ---------------------------------------------------------------------------
# search

def cmd_search(args) -> int:
    objective = Objective(args.objective)
    problem = SearchProblem(n=args.n, objective=objective,
                            canonicalize=not args.raw)
    engine = args.engine
    if engine == "auto":
        engine = "exhaustive" if args.n <= 13 else "bnb"
    if engine == "exhaustive":
        result = exhaustive_search(problem)
    else:
        result = branch_and_bound(problem, workers=args.workers,
                                  split_depth=args.split_depth)
    _write_output(args, args.out, _dump_json(result.to_json()))
    wa, wb = result.witnesses[0]
    print(f"search: n={args.n} objective={objective.value} "
          f"value={result.value} witness A={list(wa)} B={list(wb)} "
          f"-> {args.out}")
    return 0


# ---------------------------------------------------------------------------
# frontier

FRONTIER_HEADER = "family,two_minus_sp_num,two_minus_sp_den,in_ratio,quotient"


def cmd_frontier(args) -> int:
    points: list[SpInPoint] = []
    if args.base_k:
        lo, _, hi = args.base_k.partition("..")
        for k in range(int(lo), int(hi) + 1):
            points.append(base_k_point(k))
    if args.pow2:
        points.append(pow2_point())
    for n in _parse_int_list(args.search_n or ""):
        if n < 1:
            raise ValueError("--search-n sizes must be >= 1")
        problem = SearchProblem(n=n, objective=Objective.MAX_PRODUCT)
        res = (exhaustive_search(problem) if n <= 13
               else branch_and_bound(problem))
        wa, wb = res.witnesses[0]
        points.append(SpInPoint(
            family=f"search-{n}",
            sp=Fraction(len(wa) * len(wb), n),
            in_sq=Fraction(min(len(wa), len(wb)) ** 2, n),
            source=ESTIMATED))
    if not points:
        raise ValueError("nothing to tabulate; pass --base-k, --pow2 "
                         "or --search-n")

    failures = []
    advisories = []
    for p in points:
        for rep in (gap_bound_check(p), root_bound_check(p)):
            if not rep.holds:
                (advisories if rep.advisory else failures).append(rep.describe())

    rows = frontier(points)
    lines = [FRONTIER_HEADER]
    for r in rows:
        lines.append(f"{r.family},{r.gap.numerator},{r.gap.denominator},"
                     f"{dec_str(r.in_value)},{dec_str(r.quotient)}")
    _write_output(args, args.csv, "\n".join(lines) + "\n")
    print(f"frontier: {len(rows)} rows -> {args.csv}")
    for note in advisories:
        print(f"frontier: {note}", file=sys.stderr)
    if failures:
        for note in failures:
            print(f"frontier: FAIL {note}", file=sys.stderr)
        return 1
    return 0


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="disjointpairs",
        description="Construct, verify, profile and search pairs of integer "
                    "sets whose difference sets meet only at zero.")
    parser.add_argument("--version", action="version",
                        version=f"disjointpairs {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="write a pair file for a family")
    p.add_argument("--family", required=True,
                   choices=["pow2", "base", "mixed", "witness"])
    p.add_argument("--k", type=int,
                   help="base for --family base; probe index for witness")
    p.add_argument("--moduli", help="comma-separated moduli for --family mixed")
    p.add_argument("--seed-moduli",
                   help="comma-separated seed moduli for --family witness")
    p.add_argument("--limit", type=int, help="certify the pair up to here")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check disjointness and both bounds")
    p.add_argument("--pair", required=True)
    p.add_argument("--ratio", default="1.05", help="geometric grid ratio")
    p.add_argument("--report", help="write a JSON report here")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("profile", help="counting profile on a grid")
    p.add_argument("--pair")
    p.add_argument("--spec", help="digit-system file {'moduli': [...]}")
    p.add_argument("--grid", action="append", required=True,
                   help="geometric:LO:HI[:RATIO] | points:1,2,3 | "
                        "powers:BASE:LO:HI | probes:LO:HI (repeatable)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--tail-start", type=int, default=0,
                   help="trusted tail for the balance estimate")
    p.add_argument("--allow-partial", action="store_true",
                   help="exit 0 even if grid points past the certified "
                        "limit were skipped")
    p.add_argument("--csv", required=True)
    p.add_argument("--report", help="write estimates as JSON here")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("scan", help="scaled counts around a near-peak anchor")
    p.add_argument("--pair")
    p.add_argument("--spec")
    p.add_argument("--anchor", type=int, required=True)
    p.add_argument("--c", default="1/4,1/2,3/4,1,5/4,3/2,2",
                   help="comma-separated scale fractions")
    p.add_argument("--csv", required=True)
    p.add_argument("--report")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("fit", help="choose moduli placing targets in "
                                   "guaranteed-ratio windows")
    p.add_argument("--targets", required=True, help="comma-separated, increasing")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("search", help="extremal pairs in [0, n]")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--objective", required=True,
                   choices=[o.value for o in Objective])
    p.add_argument("--engine", choices=["auto", "exhaustive", "bnb"],
                   default="auto")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--split-depth", type=int, default=3)
    p.add_argument("--raw", action="store_true",
                   help="search the raw pair space (validation mode)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("frontier", help="tabulate (2-sp, in, quotient)")
    p.add_argument("--base-k", help="inclusive range like 2..50")
    p.add_argument("--pow2", action="store_true")
    p.add_argument("--search-n", help="comma-separated universe sizes to "
                                      "search and tabulate as estimates")
    p.add_argument("--csv", required=True)
    p.add_argument("--report")
    p.set_defaults(func=cmd_frontier)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InfeasibleTargetError, ExtendSpecError, UncertifiedRegionError,
            ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
