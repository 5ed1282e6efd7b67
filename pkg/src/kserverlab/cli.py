"""Command-line surface: opt-det, opt-rand, simulate, bounds, sweep.

Exit codes: 2 invalid metric file, 3 k >= n where a proper subset is
required, 4 LP instance over the variable cap, 5 unknown point name,
6 nonpositive epsilon.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import algorithms, figures, game, lp, report
from .errors import InstanceTooLarge, MetricError, NonPositiveEpsilon
from .metric import Metric, load_metric, normalize

EXIT_BAD_METRIC = 2
EXIT_BAD_K = 3
EXIT_TOO_LARGE = 4
EXIT_BAD_POINT = 5
EXIT_BAD_EPSILON = 6


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}")


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--metric", required=True, help="metric JSON file")
    sub.add_argument("--k", type=int, required=True, help="number of servers")
    sub.add_argument(
        "--c0",
        default=None,
        help="initial configuration as comma-separated point names "
        "(default: first k points)",
    )
    sub.add_argument("--threads", type=int, default=1, help="worker cap")
    sub.add_argument("--timing", action="store_true", help="include wall-clock times")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kserverlab",
        description="Exact finite-horizon competitive ratios for the "
        "k-server problem on a finite metric.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("opt-det", help="optimal deterministic strict ratio")
    _add_common(p)
    p.add_argument("--horizon", type=int, default=2)
    p.add_argument("--tolerance", type=_rational, default=Fraction(1, 1024))

    p = subs.add_parser("opt-rand", help="optimal randomized strict ratio")
    _add_common(p)
    p.add_argument("--horizon", type=int, default=2)
    p.add_argument("--tolerance", type=_rational, default=Fraction(1, 1024))
    p.add_argument("--var-cap", type=int, default=lp.DEFAULT_VAR_CAP)
    p.add_argument("--policy-out", default="policy.json")

    p = subs.add_parser("simulate", help="run an algorithm on a sequence")
    _add_common(p)
    p.add_argument("--algorithm", required=True, help="greedy, wfa, or policy:<file>")
    p.add_argument("--sequence", required=True, help="comma-separated point names")

    p = subs.add_parser("bounds", help="phase-length bound constants")
    _add_common(p)
    p.add_argument("--c", type=_rational, default=Fraction(3))
    p.add_argument("--alpha", type=_rational, default=Fraction(0))
    p.add_argument("--epsilon", type=_rational, default=Fraction(1))

    p = subs.add_parser("sweep", help="ratio table over horizons 1..T")
    _add_common(p)
    p.add_argument("--horizon", type=int, default=2)
    p.add_argument("--tolerance", type=_rational, default=Fraction(1, 1024))
    p.add_argument("--var-cap", type=int, default=lp.DEFAULT_VAR_CAP)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", default=None, help="write the table here instead of stdout")
    p.add_argument(
        "--figure",
        default=None,
        help="write a convergence figure here (default: next to --out)",
    )
    p.add_argument("--no-figure", action="store_true")
    return parser


def _load(args) -> Metric:
    try:
        return load_metric(args.metric)
    except (MetricError, OSError, json.JSONDecodeError) as exc:
        print(f"error: invalid metric file: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_BAD_METRIC)


def _initial_config(metric: Metric, args):
    k = args.k
    if not 1 <= k <= metric.n:
        print(f"error: k={k} out of range for n={metric.n}", file=sys.stderr)
        raise SystemExit(EXIT_BAD_K)
    if args.c0 is None:
        return tuple(range(k))
    names = [p for p in args.c0.split(",") if p]
    try:
        config = tuple(sorted(metric.index_of(p) for p in names))
    except KeyError as exc:
        print(f"error: unknown point {exc.args[0]!r}", file=sys.stderr)
        raise SystemExit(EXIT_BAD_POINT)
    if len(set(config)) != k:
        print(f"error: initial configuration must have {k} distinct points", file=sys.stderr)
        raise SystemExit(EXIT_BAD_K)
    return config


def _point_names(metric: Metric, indices) -> str:
    return ",".join(metric.points[i] for i in indices)


def cmd_opt_det(args) -> int:
    metric = _load(args)
    c0 = _initial_config(metric, args)
    if args.k >= metric.n:
        print(f"error: need k < n, got k={args.k}, n={metric.n}", file=sys.stderr)
        return EXIT_BAD_K
    result = game.opt_det_ratio(metric, args.k, c0, args.horizon, args.tolerance)
    print(f"value {result.value}")
    print(f"adversary {_point_names(metric, result.witness_adversary) or '-'}")
    return 0


def cmd_opt_rand(args) -> int:
    metric = _load(args)
    c0 = _initial_config(metric, args)
    try:
        lo, hi, policy = lp.opt_rand_ratio(
            metric, args.k, c0, args.horizon, args.tolerance, var_cap=args.var_cap
        )
    except InstanceTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    print(f"tau_low {lo}")
    print(f"tau_high {hi}")
    with open(args.policy_out, "w") as fh:
        json.dump(lp.policy_to_json(policy, metric, c0), fh, indent=2)
        fh.write("\n")
    print(f"policy {args.policy_out}")
    return 0


def cmd_simulate(args) -> int:
    metric = _load(args)
    c0 = _initial_config(metric, args)
    try:
        rho = tuple(metric.index_of(p) for p in args.sequence.split(",") if p)
    except KeyError as exc:
        print(f"error: unknown point {exc.args[0]!r}", file=sys.stderr)
        return EXIT_BAD_POINT

    from .offline import opt_cost

    opt = opt_cost(metric, c0, rho)
    if args.algorithm.startswith("policy:"):
        path = args.algorithm.split(":", 1)[1]
        with open(path) as fh:
            policy = lp.policy_from_json(json.load(fh), metric)
        steps = lp.expected_step_costs(policy, metric, c0, rho)
        total = sum(steps, Fraction(0))
        label = "expected_cost"
    else:
        algs = {"greedy": algorithms.Greedy, "wfa": algorithms.WorkFunctionAlgorithm}
        if args.algorithm not in algs:
            print(f"error: unknown algorithm {args.algorithm!r}", file=sys.stderr)
            return EXIT_BAD_POINT
        alg = algs[args.algorithm]()
        alg.reset(metric, c0)
        steps = [alg.step(r) for r in rho]
        total = sum(steps, Fraction(0))
        label = "cost"
    for i, (r, cost) in enumerate(zip(rho, steps), start=1):
        print(f"step {i} {metric.points[r]} {cost}")
    print(f"{label} {total}")
    print(f"opt {opt}")
    if opt == 0:
        print(f"ratio {'1' if total == 0 else 'inf'}")
    else:
        print(f"ratio {total / opt}")
    return 0


def cmd_bounds(args) -> int:
    metric = _load(args)
    if not 1 <= args.k <= metric.n:
        print(f"error: k={args.k} out of range for n={metric.n}", file=sys.stderr)
        return EXIT_BAD_K
    gamma = metric.gamma
    try:
        bounds = algorithms.compute_bounds(
            normalize(metric), args.k, args.c, args.alpha, args.epsilon
        )
    except NonPositiveEpsilon as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_EPSILON
    print(f"gamma {gamma}")
    print(f"B {bounds.B}")
    print(f"opt_threshold {bounds.opt_threshold}")
    print(f"phi {bounds.phi}")
    print(f"D {bounds.D}")
    for i, xi in enumerate(bounds.xi, start=2):
        print(f"xi_{i} {xi}")
    return 0


def cmd_sweep(args) -> int:
    metric = _load(args)
    c0 = _initial_config(metric, args)
    if args.k >= metric.n:
        print(f"error: need k < n, got k={args.k}, n={metric.n}", file=sys.stderr)
        return EXIT_BAD_K
    try:
        table = report.sweep_horizons(
            metric,
            args.k,
            c0,
            args.horizon,
            args.tolerance,
            var_cap=args.var_cap,
            timing=args.timing,
        )
    except InstanceTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    payload = report.emit(table, args.format)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload.decode())
    figure_path = args.figure
    if figure_path is None and args.out and not args.no_figure:
        figure_path = args.out.rsplit(".", 1)[0] + ".png"
    if figure_path and not args.no_figure:
        figures.render_ratio_figure(
            table, figure_path, title=f"k={args.k}, n={metric.n}"
        )
        print(f"figure {figure_path}", file=sys.stderr)
    return 0


COMMANDS = {
    "opt-det": cmd_opt_det,
    "opt-rand": cmd_opt_rand,
    "simulate": cmd_simulate,
    "bounds": cmd_bounds,
    "sweep": cmd_sweep,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except SystemExit as exc:  # raised by shared validation helpers
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
