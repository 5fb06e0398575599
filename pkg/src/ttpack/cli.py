"""Command-line entry point.

One executable, `ttpack`, with subcommands for enumeration, exact
solving, verification sweeps, the decomposition pipeline, the rational
LP step, construction generators, seeded experiments, and triangle
censuses.  Every JSON report carries the tool and format versions, the
seed, and an echo of the run configuration, and contains no timestamps,
so identical invocations produce byte-identical output.

Exit codes: 0 on success, 1 when a verified claim fails to hold, 2 on
usage errors including malformed input files.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import DEFAULT_SEED, FORMAT_VERSION, TOOL_VERSION
from .constructions import ConstructionError, blowup, qr7, turan3_tournament
from .designs import (
    DesignError,
    ag2_lines,
    all_sts7,
    fano_plane,
    parse_design,
    serialize_design,
    verify_design,
)
from .enumeration import (
    EnumerationError,
    MAX_ENUMERATION_VERTICES,
    enumerate_codes,
    tournament_from_code,
)
from .experiments import ExperimentError, density_experiment, edge_copy_stats
from .packing import Packing, PackingError, max_packing_exact, verify_packing
from .pipeline import (
    PipelineError,
    decomposition_pipeline,
    f_min,
    lp_step,
    verify_t7_thresholds,
)
from .tournament import (
    Tournament,
    TournamentFormatError,
    census,
    edge_index,
    parse_tournament,
    random_tournament,
    serialize_tournament,
    transitive_triples_lower_bound,
)

def _ceiling_target(n: int) -> int:
    """ceil(n(n-1)/6 - n/3), the conjectured minimum packing value."""
    return -(-n * (n - 3) // 6)


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    raise TypeError(f"not JSON serializable: {obj!r}")


def _emit(args, result, text_lines=None) -> None:
    config = {
        key: (str(value) if isinstance(value, Fraction) else value)
        for key, value in sorted(vars(args).items())
        if key not in ("handler", "out", "format") and value is not None
    }
    if getattr(args, "format", "json") == "text" and text_lines is not None:
        payload = "\n".join(text_lines) + "\n"
    else:
        doc = {
            "tool": "ttpack",
            "tool_version": TOOL_VERSION,
            "format_version": FORMAT_VERSION,
            "seed": getattr(args, "seed", None),
            "config": config,
            "result": result,
        }
        payload = json.dumps(doc, sort_keys=True, indent=2, default=_jsonable) + "\n"
    _write_output(args, payload)


def _write_output(args, payload: str) -> None:
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _load_tournament(path: str) -> Tournament:
    with open(path, "r", encoding="ascii") as fh:
        return parse_tournament(fh.read())


def _cmd_enumerate(args) -> int:
    codes = enumerate_codes(args.n, cache_dir=args.cache, workers=args.workers)
    if args.score:
        want = tuple(int(s) for s in args.score.split(","))
        if len(want) != args.n:
            raise EnumerationError(f"score has {len(want)} entries for n={args.n}")
        codes = tuple(
            code for code in codes if tournament_from_code(code).score() == want
        )
    result = {"n": args.n, "count": len(codes), "codes": list(codes)}
    _emit(args, result, [f"n={args.n} classes={len(codes)}", *codes])
    return 0


def _cmd_solve(args) -> int:
    t = _load_tournament(args.infile)
    budget = args.budget_ms / 1000 if args.budget_ms is not None else None
    p = max_packing_exact(t, args.k, time_budget=budget)
    result = {
        "n": p.n,
        "k": p.k,
        "value": p.value,
        "optimal": p.optimal,
        "copies": [list(c) for c in p.copies],
        "nodes_explored": p.nodes_explored,
    }
    label = "exact" if p.optimal else "lower bound (budget hit)"
    _emit(args, result, [f"P_{p.k} = {p.value} ({label})"])
    return 0


def _cmd_census(args) -> int:
    t = _load_tournament(args.infile)
    c = census(t)
    result = {
        "n": t.n,
        "a": c.a,
        "t": c.t,
        "packing_lower_bound": str(transitive_triples_lower_bound(max(t.n, 3))),
    }
    _emit(args, result, [f"n={t.n} a={c.a} t={c.t}"])
    return 0


def _cmd_verify_lemma22(args) -> int:
    report = verify_t7_thresholds(cache_dir=args.cache, workers=args.workers)
    joint = {f"t={t},P={p}": count for (t, p), count in sorted(report.joint_distribution().items())}
    result = {
        "classes": len(report.records),
        "low_triangle_perfect": report.low_triangle_perfect,
        "mid_triangle_six": report.mid_triangle_six,
        "always_five": report.always_five,
        "min_packing": report.min_packing(),
        "joint_distribution": joint,
    }
    _emit(args, result, [f"classes={len(report.records)} min_packing={report.min_packing()} all thresholds hold"])
    return 0


def _cmd_verify_conjecture(args) -> int:
    rows = {}
    ok = True
    for n in range(3, args.max_n + 1):
        record = f_min(n, cache_dir=args.cache, workers=args.workers)
        target = _ceiling_target(n)
        rows[str(n)] = {
            "f": record.f_value,
            "ceiling_formula": target,
            "argmin_classes": len(record.argmin_codes),
        }
        if record.f_value != target:
            ok = False
    result = {"max_n": args.max_n, "values": rows, "all_match": ok}
    _emit(args, result, [f"n={n}: f={row['f']} formula={row['ceiling_formula']}" for n, row in rows.items()])
    return 0 if ok else 1


def _cmd_verify_design(args) -> int:
    with open(args.infile, "r", encoding="ascii") as fh:
        design = parse_design(fh.read())
    valid = verify_design(design)
    result = {
        "points": design.point_count,
        "block_size": design.block_size,
        "blocks": len(design.blocks),
        "valid": valid,
    }
    _emit(args, result, [f"valid={valid}"])
    return 0 if valid else 1


def _cmd_verify_packing(args) -> int:
    t = _load_tournament(args.infile)
    with open(args.packing, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    body = doc.get("result", doc)
    try:
        k = int(body["k"])
        copies = tuple(tuple(int(v) for v in c) for c in body["copies"])
    except (KeyError, TypeError, ValueError) as exc:
        raise PackingError(f"packing file missing solve fields: {exc}") from exc
    covered = 0
    ok = True
    for c in copies:
        if len(set(c)) != len(c) or any(not 0 <= v < t.n for v in c):
            ok = False
            break
        for i, u in enumerate(sorted(c)):
            for w in sorted(c)[i + 1 :]:
                covered |= 1 << edge_index(t.n, u, w)
    packing = Packing(
        n=t.n,
        k=k,
        members=tuple(range(len(copies))),
        copies=copies,
        covered_edges=covered,
        optimal=False,
        nodes_explored=0,
    )
    valid = ok and verify_packing(t, packing)
    result = {"n": t.n, "k": k, "members": len(copies), "valid": valid}
    _emit(args, result, [f"valid={valid}"])
    return 0 if valid else 1


def _cmd_fmin(args) -> int:
    record = f_min(args.n, k=args.k, cache_dir=args.cache, workers=args.workers)
    result = {
        "n": record.n,
        "k": record.k,
        "f": record.f_value,
        "argmin_codes": list(record.argmin_codes),
    }
    _emit(args, result, [f"f({record.n}) = {record.f_value}"])
    return 0


def _cmd_pipeline(args) -> int:
    t = _load_tournament(args.infile)
    report = decomposition_pipeline(t, trials=args.trials, seed=args.seed, workers=args.workers)
    result = {
        "n": report.n,
        "trials": report.trials,
        "totals": list(report.totals),
        "min_total": report.min_total(),
        "block_value_histogram": report.block_value_histogram,
        "p1": str(report.p1),
        "p2": str(report.p2),
        "p3": str(report.p3),
        "mean_block_packing": str(report.mean_block_packing),
        "reference_density": str(report.reference_density),
    }
    _emit(args, result, [f"trials={report.trials} min_total={report.min_total()} mean_block={float(report.mean_block_packing):.3f}"])
    return 0


def _cmd_lp(args) -> int:
    values = tuple(Fraction(v) for v in args.values.split(","))
    costs = tuple(Fraction(c) for c in args.costs.split(","))
    if len(values) != 3 or len(costs) != 2:
        raise PipelineError(f"need 3 values and 2 costs, got {args.values!r}, {args.costs!r}")
    res = lp_step(Fraction(args.budget), values, costs)
    result = {
        "minimum": str(res.minimum),
        "argmin": [str(p) for p in res.argmin],
    }
    _emit(args, result, [f"minimum={res.minimum} at ({', '.join(str(p) for p in res.argmin)})"])
    return 0


def _cmd_construct(args) -> int:
    if args.kind == "turan3":
        t = turan3_tournament(args.n, filler=args.filler, seed=args.seed)
    elif args.kind == "qr7":
        t = qr7()
    else:
        t = blowup(qr7(), args.factor, filler=args.filler, seed=args.seed)
    _write_output(args, serialize_tournament(t))
    return 0


def _cmd_design(args) -> int:
    if args.kind == "fano":
        payload = serialize_design(fano_plane())
    elif args.kind == "ag2":
        payload = serialize_design(ag2_lines(7))
    else:
        payload = "\n".join(serialize_design(d) for d in all_sts7())
    _write_output(args, payload)
    return 0


def _cmd_experiment_density(args) -> int:
    report = density_experiment(args.n, args.k, args.trials, args.seed, improve=args.improve)
    if args.format == "csv":
        lines = ["trial,copies,covered_fraction"]
        for i, (count, frac) in enumerate(zip(report.copy_counts, report.covered_fractions)):
            lines.append(f"{i},{count},{float(frac):.6f}")
        _write_output(args, "\n".join(lines) + "\n")
        return 0
    result = {
        "n": report.n,
        "k": report.k,
        "trials": report.trials,
        "improve": report.improve,
        "copy_counts": list(report.copy_counts),
        "covered_fractions": [str(f) for f in report.covered_fractions],
        "mean_covered_fraction": str(sum(report.covered_fractions) / report.trials),
        "reference_density": str(report.reference_density),
    }
    _emit(args, result)
    return 0


def _cmd_experiment_edge_stats(args) -> int:
    if args.infile:
        t = _load_tournament(args.infile)
    else:
        t = random_tournament(args.n, args.seed)
    stats = edge_copy_stats(t, args.k)
    result = {
        "n": stats.n,
        "k": stats.k,
        "mean": str(stats.mean),
        "min": stats.min_count,
        "max": stats.max_count,
        "expectation": str(stats.expectation),
        "counts": list(stats.counts),
    }
    _emit(args, result, [f"mean={float(stats.mean):.4f} expectation={float(stats.expectation):.4f}"])
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ttpack",
        description="Exact and randomized tooling for edge-disjoint packings of transitive subtournaments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed=True, cache=False, workers=False, fmt=("json", "text")):
        p.add_argument("--out", help="write the report to this path instead of stdout")
        if fmt:
            p.add_argument("--format", choices=fmt, default=fmt[0])
        if seed:
            p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        if cache:
            p.add_argument("--cache", help="enumeration cache directory (default $TTPACK_CACHE or ./cache)")
        if workers:
            p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("enumerate", help="list canonical codes of all classes of order n")
    p.add_argument("--n", type=int, required=True, choices=range(1, MAX_ENUMERATION_VERTICES + 1))
    p.add_argument("--score", help="comma-separated sorted out-degree filter")
    common(p, cache=True, workers=True)
    p.set_defaults(handler=_cmd_enumerate)

    p = sub.add_parser("solve", help="exact maximum packing of one tournament")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--budget-ms", dest="budget_ms", type=int)
    common(p)
    p.set_defaults(handler=_cmd_solve)

    p = sub.add_parser("census", help="triangle census of one tournament")
    p.add_argument("--in", dest="infile", required=True)
    common(p)
    p.set_defaults(handler=_cmd_census)

    verify = sub.add_parser("verify", help="fail-closed verification sweeps").add_subparsers(
        dest="verify_target", required=True
    )
    p = verify.add_parser("lemma22", help="triangle-count thresholds over all 7-vertex classes")
    common(p, cache=True, workers=True)
    p.set_defaults(handler=_cmd_verify_lemma22)
    p = verify.add_parser("conjecture", help="minimum packing values against the ceiling formula")
    p.add_argument("--max-n", dest="max_n", type=int, default=8, choices=range(3, 9))
    common(p, cache=True, workers=True)
    p.set_defaults(handler=_cmd_verify_conjecture)
    p = verify.add_parser("design", help="pairwise balance of a design file")
    p.add_argument("--in", dest="infile", required=True)
    common(p)
    p.set_defaults(handler=_cmd_verify_design)
    p = verify.add_parser("packing", help="a solve report against its tournament")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--packing", required=True, help="JSON file with solve output")
    common(p)
    p.set_defaults(handler=_cmd_verify_packing)

    p = sub.add_parser("fmin", help="minimum packing value over all classes of order n")
    p.add_argument("--n", type=int, required=True, choices=range(3, 9))
    p.add_argument("--k", type=int, default=3)
    common(p, cache=True, workers=True)
    p.set_defaults(handler=_cmd_fmin)

    p = sub.add_parser("pipeline", help="seeded 49-vertex decomposition trials")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--trials", type=int, default=100)
    common(p, workers=True)
    p.set_defaults(handler=_cmd_pipeline)

    p = sub.add_parser("lp", help="exact rational minimization over the budgeted simplex")
    p.add_argument("--budget", required=True, help="rational, e.g. 35/4")
    p.add_argument("--values", default="7,6,5")
    p.add_argument("--costs", default="5,12")
    common(p)
    p.set_defaults(handler=_cmd_lp)

    p = sub.add_parser("construct", help="emit a generated tournament file")
    kinds = p.add_mutually_exclusive_group(required=True)
    kinds.add_argument("--turan3", dest="kind", action="store_const", const="turan3")
    kinds.add_argument("--qr7", dest="kind", action="store_const", const="qr7")
    kinds.add_argument("--blowup", dest="factor", type=int, metavar="FACTOR")
    p.add_argument("--n", type=int, help="order for --turan3")
    p.add_argument("--filler", choices=("transitive", "random"), default="transitive")
    common(p, fmt=None)
    p.set_defaults(handler=_cmd_construct, kind=None)

    p = sub.add_parser("design", help="emit a block design file")
    kinds = p.add_mutually_exclusive_group(required=True)
    kinds.add_argument("--fano", dest="kind", action="store_const", const="fano")
    kinds.add_argument("--ag2", dest="kind", action="store_const", const="ag2")
    kinds.add_argument("--all-sts7", dest="kind", action="store_const", const="all-sts7")
    common(p, seed=False, fmt=None)
    p.set_defaults(handler=_cmd_design)

    experiment = sub.add_parser("experiment", help="seeded random-tournament studies").add_subparsers(
        dest="experiment_kind", required=True
    )
    p = experiment.add_parser("density", help="greedy packing density trials")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--trials", type=int, default=30)
    p.add_argument("--improve", action="store_true")
    common(p, fmt=("json", "csv"))
    p.set_defaults(handler=_cmd_experiment_density)
    p = experiment.add_parser("edge-stats", help="per-edge copy counts vs expectation")
    p.add_argument("--n", type=int)
    p.add_argument("--in", dest="infile")
    p.add_argument("--k", type=int, default=3)
    common(p)
    p.set_defaults(handler=_cmd_experiment_edge_stats)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "command", None) == "construct":
        if args.kind is None and args.factor is None:
            parser.error("construct requires --turan3, --qr7 or --blowup")
        if args.kind is None:
            args.kind = "blowup"
        if args.kind == "turan3" and args.n is None:
            print("error: --turan3 requires --n", file=sys.stderr)
            return 2
    if getattr(args, "command", None) == "experiment" and args.experiment_kind == "edge-stats":
        if args.infile is None and args.n is None:
            print("error: edge-stats requires --n or --in", file=sys.stderr)
            return 2
    try:
        return args.handler(args)
    except TournamentFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PipelineError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1
    except (
        ConstructionError,
        DesignError,
        EnumerationError,
        ExperimentError,
        PackingError,
        OSError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
