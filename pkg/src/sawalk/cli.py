"""Command-line interface.

Subcommands: solve (one run), experiment (seeded campaign), oracle
(exhaustive enumeration), hasse (adjacency-graph export), render
(conformation drawing).
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from sawalk.engine import (
    DEFAULT_BUFFER_CAPACITY,
    DEFAULT_PROBE_LIMIT,
    DEFAULT_SEED,
    SearchConfig,
    run_search,
)
from sawalk.harness import (
    ExperimentConfig,
    RunRow,
    aggregate,
    experiment_json,
    improving_campaign,
    rows_csv,
    run_experiment,
)
from sawalk.hpfold import digits_text, make_problem
from sawalk.instances import load_instances
from sawalk.mixedradix import hasse_dot, hasse_stats, parse_spec
from sawalk.oracle import count_at_or_below, enumerate_optimum, report_text
from sawalk.render import ascii_conformation, svg_conformation


def _add_problem_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--plan", choices=["A", "B", "C"], help="search formulation")
    parser.add_argument("--length", type=int, help="chain length n")
    parser.add_argument("--weight", type=int, help="target number of H beads")
    parser.add_argument("--target", type=int, help="energy target (<= 0)")
    parser.add_argument("--coord-b", help="fixed binary color segment (plan A)")
    parser.add_argument("--coord-t", help="fixed ternary turn segment (plan B)")
    parser.add_argument("--weight-cap", type=int, help="admissible weight ceiling (default weight+1)")
    parser.add_argument("--instance", help="read the problem from an instance file")
    parser.add_argument("--index", type=int, default=0, help="record index within --instance")


def _problem_from_args(args: argparse.Namespace):
    if args.instance:
        problems = load_instances(args.instance)
        if not 0 <= args.index < len(problems):
            raise SystemExit(f"instance file has {len(problems)} records, no index {args.index}")
        return problems[args.index]
    if not args.plan:
        raise SystemExit("either --instance or --plan is required")
    if args.target is None:
        raise SystemExit("--target is required without --instance")
    return make_problem(
        args.plan,
        n=args.length,
        weight_target=args.weight,
        energy_target=args.target,
        coord_b=args.coord_b,
        coord_t=args.coord_t,
        weight_cap=args.weight_cap,
    )


def _write_or_print(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_solve(args: argparse.Namespace) -> int:
    problem = _problem_from_args(args)
    config = SearchConfig(
        seed=args.base_seed,
        probe_limit=args.probe_limit,
        buffer_capacity=args.buffer_capacity,
    )
    result = run_search(config, problem)
    n = problem.n
    row = RunRow(
        seed=result.seed,
        coord_b=digits_text(result.coordinate.digits[:n]),
        coord_t=digits_text(result.coordinate.digits[n:]),
        value=result.value,
        cnt_probe=result.probe_count,
        walk_length=result.walk_length,
        probes_per_step=result.probes_per_step,
        is_censored=result.is_censored,
    )
    status = "censored" if row.is_censored else "solved"
    print(
        f"{status}: value {row.value} at {row.coord_b}.{row.coord_t} "
        f"(probes {row.cnt_probe}, steps {row.walk_length}, restarts {result.restarts})"
    )
    if args.out:
        text = rows_csv([row]) if args.format == "csv" else experiment_json(
            aggregate(ExperimentConfig(problem, sample_size=1), [row]), [row]
        )
        Path(args.out).write_text(text)
    return 1 if row.is_censored else 0


def _cmd_experiment(args: argparse.Namespace) -> int:
    problem = _problem_from_args(args)
    config = ExperimentConfig(
        problem=problem,
        sample_size=args.seeds,
        base_seed=args.base_seed,
        probe_limit=args.probe_limit,
        buffer_capacity=args.buffer_capacity,
        parallelism=args.parallelism,
        out_path=args.out,
        out_format=args.format,
    )
    if args.improve:
        bound, rows = improving_campaign(config)
        summary = aggregate(config, rows)
        if config.out_path:
            text = rows_csv(rows) if args.format == "csv" else experiment_json(summary, rows)
            Path(config.out_path).write_text(text)
        print(f"final bound {bound} after {len(rows)} runs")
    else:
        summary, rows = run_experiment(config)
    print(f"runs {summary.sample_size}  censored {summary.censored_count}")
    print(f"unique solutions {summary.unique_solutions}  beyond target {summary.beyond_target}")
    for name, metric in (
        ("walkLength", summary.walk_length),
        ("cntProbe", summary.cnt_probe),
        ("probesPerStep", summary.probes_per_step),
    ):
        if metric is None:
            print(f"{name}: (no stepped runs)")
        else:
            print(
                f"{name}: median {metric.median:g} mean {metric.mean:.1f} "
                f"stdev {metric.stdev:.1f} min {metric.min:g} max {metric.max:g}"
            )
    if args.out:
        print(f"rows written to {args.out}")
    return 0


def _cmd_oracle(args: argparse.Namespace) -> int:
    problem = _problem_from_args(args)
    report = enumerate_optimum(problem, domain_cap=args.domain_cap, workers=args.workers)
    text = report_text(report)
    if args.threshold is not None:
        count = count_at_or_below(problem, args.threshold, report=report)
        text += f"count-at-or-below[{args.threshold}] = {count}\n"
    _write_or_print(text, args.out)
    return 0


def _cmd_hasse(args: argparse.Namespace) -> int:
    spec = parse_spec(args.spec)
    if args.dot:
        _write_or_print(hasse_dot(spec, enumeration_cap=args.cap), args.out)
    else:
        stats = hasse_stats(spec, enumeration_cap=args.cap)
        histogram = " ".join(
            f"{deg}:{count}" for deg, count in sorted(stats.degree_histogram.items())
        )
        _write_or_print(
            f"vertices = {stats.vertex_count}\n"
            f"edges = {stats.edge_count}\n"
            f"degrees = {histogram}\n",
            args.out,
        )
    return 0


def _cmd_render(args: argparse.Namespace) -> int:
    try:
        text = ascii_conformation(args.coord_b, args.coord_t)
    except ValueError as err:
        raise SystemExit(str(err))
    _write_or_print(text, args.out)
    if args.svg:
        Path(args.svg).write_text(svg_conformation(args.coord_b, args.coord_t))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sawalk",
        description="Self-avoiding walk search over mixed-radix spaces with an HP folding objective.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="run one seeded search")
    _add_problem_args(solve)
    solve.add_argument("--base-seed", type=int, default=DEFAULT_SEED)
    solve.add_argument("--probe-limit", type=int, default=DEFAULT_PROBE_LIMIT)
    solve.add_argument("--buffer-capacity", type=int, default=DEFAULT_BUFFER_CAPACITY)
    solve.add_argument("--out", help="write the result row to this file")
    solve.add_argument("--format", choices=["csv", "json"], default="csv")
    solve.set_defaults(func=_cmd_solve)

    experiment = sub.add_parser("experiment", help="run a multi-seed campaign")
    _add_problem_args(experiment)
    experiment.add_argument("--seeds", type=int, default=1000, help="number of runs")
    experiment.add_argument("--base-seed", type=int, default=DEFAULT_SEED)
    experiment.add_argument("--probe-limit", type=int, default=DEFAULT_PROBE_LIMIT)
    experiment.add_argument("--buffer-capacity", type=int, default=DEFAULT_BUFFER_CAPACITY)
    experiment.add_argument("--parallelism", type=int, default=1)
    experiment.add_argument("--improve", action="store_true", help="ratchet a shared bound across runs")
    experiment.add_argument("--out", help="write result rows to this file")
    experiment.add_argument("--format", choices=["csv", "json"], default="csv")
    experiment.set_defaults(func=_cmd_experiment)

    oracle = sub.add_parser("oracle", help="enumerate a small domain exhaustively")
    _add_problem_args(oracle)
    oracle.add_argument("--domain-cap", type=int, default=10**8)
    oracle.add_argument("--workers", type=int, default=1)
    oracle.add_argument("--threshold", type=int, help="also count pairs at or below this value")
    oracle.add_argument("--out", help="write the report to this file")
    oracle.set_defaults(func=_cmd_oracle)

    hasse = sub.add_parser("hasse", help="adjacency-graph statistics or DOT export")
    hasse.add_argument("--spec", required=True, help="space spec, e.g. 2^2.3^2")
    hasse.add_argument("--dot", action="store_true", help="emit DOT text instead of statistics")
    hasse.add_argument("--cap", type=int, default=10**6, help="enumeration cap")
    hasse.add_argument("--out", help="write output to this file")
    hasse.set_defaults(func=_cmd_hasse)

    render = sub.add_parser("render", help="draw a feasible conformation")
    render.add_argument("--coord-b", required=True)
    render.add_argument("--coord-t", required=True)
    render.add_argument("--svg", help="also write an SVG drawing to this file")
    render.add_argument("--out", help="write the text drawing to this file")
    render.set_defaults(func=_cmd_render)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
