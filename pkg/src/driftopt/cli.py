"""Command-line front end.

Subcommands: drift (exact/approximate drift queries), cutoffs (the
optimal-strength interval table), bounds (runtime-constant bracket), and
simulate (Monte Carlo campaigns). All output is deterministic given the
flags; numeric values print with 12 significant digits, interval tables
with 9 decimals, and JSON carries full round-trip precision.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from .bounds import (
    PartitionScheme,
    constant_bracket,
    default_partition,
    dense_partition,
    runtime_estimate,
    tail_integral,
)
from .drift import (
    approx_drift,
    approx_drift_general,
    approx_drift_via_integral,
    exact_drift,
    exact_drift_rational,
)
from .quadrature import QuadratureError
from .simulate import (
    SimConfig,
    UnaryOperatorDistribution,
    fixed_budget_estimate,
    run_algorithm,
    summarize_runtimes,
)
from .strengths import BracketError, strength_intervals

_ALGO_NAMES = {
    "rls": "rls",
    "driftmax": "drift_max_exact",
    "approx-driftmax": "drift_max_approx",
    "custom": "custom",
}


def _print_value(value: float) -> None:
    print(f"{value:.12g}")


def _read_kv_config(path: str) -> dict[str, str]:
    out: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {raw!r}")
            key, val = line.split("=", 1)
            out[key.strip().replace("-", "_")] = val.strip()
    return out


def _apply_config_file(args: argparse.Namespace, spec: dict[str, object]) -> None:
    """Fill unset options from --config key=value pairs; explicit flags win.

    spec maps option name -> (converter, default). Options the user did not
    pass are parsed as None so a config value (or the default) can land.
    """
    cfg = _read_kv_config(args.config) if getattr(args, "config", None) else {}
    for name, (conv, default) in spec.items():
        if getattr(args, name) is not None:
            continue
        if name in cfg:
            setattr(args, name, conv(cfg[name]))
        else:
            setattr(args, name, default)


def _bool_opt(text: str) -> bool:
    val = text.strip().lower()
    if val in ("1", "true", "yes", "on"):
        return True
    if val in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"expected a boolean, got {text!r}")


# ---------------------------------------------------------------------------
# drift


def cmd_drift_exact(args: argparse.Namespace) -> int:
    _apply_config_file(args, {"n": (int, None), "d": (int, None), "r": (int, None)})
    for name in ("n", "d", "r"):
        if getattr(args, name) is None:
            print(f"error: --{name} is required", file=sys.stderr)
            return 2
    if args.rational:
        value = exact_drift_rational(args.n, args.d, args.r)
        if args.format == "json":
            print(json.dumps({"numerator": value.numerator,
                              "denominator": value.denominator,
                              "value": float(value)}))
        else:
            print(f"{value.numerator}/{value.denominator}")
        return 0
    value = exact_drift(args.n, args.d, args.r)
    if args.format == "json":
        print(json.dumps({"value": value}))
    else:
        _print_value(value)
    return 0


def cmd_drift_approx(args: argparse.Namespace) -> int:
    _apply_config_file(
        args, {"r": (int, None), "p": (float, None), "q": (float, None)}
    )
    if args.r is None or args.p is None:
        print("error: --r and --p are required", file=sys.stderr)
        return 2
    if args.via_integral:
        if args.r % 2 == 0 or args.r < 3:
            print("error: --via-integral needs an odd strength >= 3", file=sys.stderr)
            return 2
        value = approx_drift_via_integral((args.r - 1) // 2, args.p)
    elif args.q is not None:
        value = approx_drift_general(args.r, args.p, args.q)
    else:
        value = approx_drift(args.r, args.p)
    if args.format == "json":
        print(json.dumps({"value": value}))
    else:
        _print_value(value)
    return 0


# ---------------------------------------------------------------------------
# cutoffs


def cmd_cutoffs(args: argparse.Namespace) -> int:
    _apply_config_file(args, {"max_r": (int, 11)})
    if args.max_r < 3 or args.max_r % 2 == 0:
        print("error: --max-r must be an odd integer >= 3", file=sys.stderr)
        return 2
    rows = strength_intervals(args.max_r)
    header = ("r", "left", "right", "drift_left", "drift_right", "width")
    if args.format == "json":
        print(json.dumps([
            {
                "r": s.r,
                "left": s.p_left,
                "right": s.p_right,
                "drift_left": s.a_left,
                "drift_right": s.a_right,
                "width": s.p_right - s.p_left,
            }
            for s in rows
        ]))
        return 0
    buf = io.StringIO()
    writer = csv.writer(buf)
    if args.format == "csv":
        writer.writerow(header)
        for s in rows:
            writer.writerow(
                [s.r]
                + [f"{v:.9f}" for v in (s.p_left, s.p_right, s.a_left, s.a_right,
                                         s.p_right - s.p_left)]
            )
        sys.stdout.write(buf.getvalue())
        return 0
    print(f"{'r':>5} {'left':>12} {'right':>12} {'drift_left':>12} "
          f"{'drift_right':>12} {'width':>12}")
    for s in rows:
        print(f"{s.r:>5} {s.p_left:>12.9f} {s.p_right:>12.9f} "
              f"{s.a_left:>12.9f} {s.a_right:>12.9f} {s.p_right - s.p_left:>12.9f}")
    return 0


# ---------------------------------------------------------------------------
# bounds


def _load_partition(text: str) -> PartitionScheme:
    if text == "default":
        return default_partition()
    if text.startswith("dense:"):
        return dense_partition(int(text.split(":", 1)[1]))
    if text.startswith("file:"):
        path = text.split(":", 1)[1]
        points = []
        with open(path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                try:
                    points.append(float(line))
                except ValueError as exc:
                    raise ValueError(f"{path}:{lineno}: not a number: {raw!r}") from exc
        return PartitionScheme(points=tuple(points))
    raise ValueError(f"unknown partition spec {text!r}")


def cmd_bounds(args: argparse.Namespace) -> int:
    _apply_config_file(
        args,
        {"partition": (str, "default"), "eps": (float, None), "n": (int, None)},
    )
    partition = _load_partition(args.partition)
    bracket = constant_bracket(partition, args.eps)
    report = {
        "partition_size": len(partition.points),
        "c_prime_lower": bracket.c_prime_lower,
        "c_prime_upper": bracket.c_prime_upper,
        "c_lower": bracket.c_lower,
        "c_upper": bracket.c_upper,
        "integral_value": tail_integral(partition.pk, args.eps
                                        if args.eps is not None
                                        else 0.5 - partition.p0),
        "runtime_estimate_at_n": None,
    }
    if args.n is not None:
        lo, hi = runtime_estimate(args.n, bracket)
        report["runtime_estimate_at_n"] = {"n": args.n, "lower": lo, "upper": hi}
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        keys = ["partition_size", "c_prime_lower", "c_prime_upper",
                "c_lower", "c_upper", "integral_value"]
        writer.writerow(keys)
        writer.writerow([report[k] for k in keys])
        sys.stdout.write(buf.getvalue())
        return 0
    if args.format == "pretty":
        print(f"partition points : {report['partition_size']}")
        print(f"c' bracket       : [{bracket.c_prime_lower:.12g}, "
              f"{bracket.c_prime_upper:.12g}]")
        print(f"c bracket        : [{bracket.c_lower:.12g}, {bracket.c_upper:.12g}]")
        print(f"tail integral    : {report['integral_value']:.12g}")
        if report["runtime_estimate_at_n"]:
            est = report["runtime_estimate_at_n"]
            print(f"runtime at n={est['n']}: [{est['lower']:.12g}, "
                  f"{est['upper']:.12g}]")
        return 0
    print(json.dumps(report))
    return 0


# ---------------------------------------------------------------------------
# simulate


def _load_dist_file(path: str, n: int) -> UnaryOperatorDistribution:
    weights = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                weights.append(float(line))
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: not a number: {raw!r}") from exc
    if len(weights) != n + 1:
        raise ValueError(
            f"{path}: need {n + 1} weights for flip counts 0..{n}, got {len(weights)}"
        )
    return UnaryOperatorDistribution(weights=tuple(weights))


def cmd_simulate(args: argparse.Namespace) -> int:
    spec = {
        "algo": (str, None),
        "n": (int, None),
        "runs": (int, 1000),
        "seed": (int, 1),
        "mode": (str, "condensed"),
        "eps": (float, 0.05),
        "budget": (int, None),
        "budgets": (str, None),
        "dist_file": (str, None),
        "fold": (str, "auto"),
        "trajectory": (str, None),
        "per_run": (_bool_opt, False),
    }
    _apply_config_file(args, spec)
    if args.algo is None or args.n is None:
        print("error: --algo and --n are required", file=sys.stderr)
        return 2
    if args.algo not in _ALGO_NAMES:
        print(f"error: unknown algorithm {args.algo!r}", file=sys.stderr)
        return 2
    if args.mode not in ("bitstring", "condensed"):
        print(f"error: unknown mode {args.mode!r}", file=sys.stderr)
        return 2
    if args.fold not in ("auto", "on", "off"):
        print("error: --fold must be auto, on, or off", file=sys.stderr)
        return 2
    algorithm = _ALGO_NAMES[args.algo]
    dist = None
    if algorithm == "custom":
        if not args.dist_file:
            print("error: --dist-file is required for --algo custom", file=sys.stderr)
            return 2
        dist = _load_dist_file(args.dist_file, args.n)
    config = SimConfig(
        n=args.n,
        algorithm=algorithm,
        eps=args.eps,
        custom_dist=dist,
        mode=args.mode,
        seed=args.seed,
        runs=args.runs,
        budget=args.budget,
        fold={"auto": None, "on": True, "off": False}[args.fold],
    )
    base = {
        "algorithm": args.algo,
        "n": args.n,
        "runs": args.runs,
        "seed": args.seed,
        "mode": args.mode,
        "eps": config.eps.value,
    }
    if args.budgets is not None:
        budgets = [int(tok) for tok in str(args.budgets).split(",") if tok.strip()]
        stats = fixed_budget_estimate(config, budgets)
        report = dict(base)
        report["per_budget"] = [
            {"budget": bp.budget, "mean_distance": bp.mean_distance,
             "standard_error": bp.standard_error}
            for bp in stats.per_budget
        ]
        _emit_budget_report(args, report, stats)
        return 0
    if args.trajectory is not None:
        if args.budget is None:
            print("error: --trajectory requires --budget", file=sys.stderr)
            return 2
        records = run_algorithm(config, record_trajectory=True)
        ts = range(config.budget + 1)
        means = [
            sum(rec.trajectory[t] for rec in records) / len(records) for t in ts
        ]
        with open(args.trajectory, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["t", "mean_distance"])
            for t, m in zip(ts, means):
                writer.writerow([t, repr(m)])
    else:
        records = run_algorithm(config)
    stats = summarize_runtimes(records)
    report = dict(base)
    report.update(
        mean=stats.mean,
        variance=stats.variance,
        standard_error=stats.standard_error,
        count=stats.count,
        censored=stats.censored,
    )
    if args.per_run:
        report["runtimes"] = [rec.runtime for rec in records]
        report["censored_flags"] = [rec.censored for rec in records]
    _emit_runtime_report(args, report, stats)
    return 0


def _emit_budget_report(args, report, stats) -> None:
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["budget", "mean_distance", "standard_error"])
        for bp in stats.per_budget:
            writer.writerow([bp.budget, repr(bp.mean_distance),
                             repr(bp.standard_error)])
        sys.stdout.write(buf.getvalue())
    elif args.format == "pretty":
        print(f"{args.algo} on n={args.n}, {args.runs} runs")
        for bp in stats.per_budget:
            print(f"  B={bp.budget:>8}  mean X_B = {bp.mean_distance:.6g} "
                  f"(se {bp.standard_error:.3g})")
    else:
        print(json.dumps(report))


def _emit_runtime_report(args, report, stats) -> None:
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(
            ["algorithm", "n", "runs", "mean", "variance", "se", "censored"]
        )
        writer.writerow(
            [args.algo, args.n, args.runs, repr(stats.mean), repr(stats.variance),
             repr(stats.standard_error), stats.censored]
        )
        sys.stdout.write(buf.getvalue())
    elif args.format == "pretty":
        print(f"{args.algo} on n={args.n}: mean runtime {stats.mean:.6g} "
              f"evaluations (se {stats.standard_error:.3g}, "
              f"{stats.count} runs, {stats.censored} censored)")
    else:
        print(json.dumps(report))


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="driftopt",
        description="Drift-optimal mutation strengths on OneMax: exact and "
        "approximate drift values, optimal-strength cut-off tables, runtime "
        "constant brackets, and Monte Carlo simulation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_drift = sub.add_parser("drift", help="evaluate drift expressions")
    dsub = p_drift.add_subparsers(dest="variant", required=True)

    p_ex = dsub.add_parser("exact", help="exact drift B(n, d, r)")
    p_ex.add_argument("--n", type=int)
    p_ex.add_argument("--d", type=int)
    p_ex.add_argument("--r", type=int)
    p_ex.add_argument("--rational", action="store_true",
                      help="print the exact fraction (n <= 60)")
    p_ex.add_argument("--format", choices=("pretty", "json"), default="pretty")
    p_ex.add_argument("--config", help="key=value file mirroring the flags")
    p_ex.set_defaults(func=cmd_drift_exact)

    p_ap = dsub.add_parser("approx", help="n-free drift A(r, p, q)")
    p_ap.add_argument("--r", type=int)
    p_ap.add_argument("--p", type=float)
    p_ap.add_argument("--q", type=float,
                      help="second parameter; defaults to 1 - p")
    p_ap.add_argument("--via-integral", action="store_true",
                      help="evaluate through the double-integral identity")
    p_ap.add_argument("--format", choices=("pretty", "json"), default="pretty")
    p_ap.add_argument("--config", help="key=value file mirroring the flags")
    p_ap.set_defaults(func=cmd_drift_approx)

    p_cut = sub.add_parser("cutoffs", help="optimal-strength interval table")
    p_cut.add_argument("--max-r", dest="max_r", type=int)
    p_cut.add_argument("--format", choices=("pretty", "csv", "json"),
                       default="pretty")
    p_cut.add_argument("--config", help="key=value file mirroring the flags")
    p_cut.set_defaults(func=cmd_cutoffs)

    p_b = sub.add_parser("bounds", help="runtime-constant bracket")
    p_b.add_argument("--partition",
                     help="default | dense:<max_r> | file:<path>")
    p_b.add_argument("--eps", type=float,
                     help="distance margin; defaults to 1/2 - p_0")
    p_b.add_argument("--n", type=int, help="also print the runtime window at n")
    p_b.add_argument("--format", choices=("pretty", "csv", "json"),
                     default="json")
    p_b.add_argument("--config", help="key=value file mirroring the flags")
    p_b.set_defaults(func=cmd_bounds)

    p_s = sub.add_parser("simulate", help="Monte Carlo campaigns")
    p_s.add_argument("--algo", choices=tuple(_ALGO_NAMES))
    p_s.add_argument("--n", type=int)
    p_s.add_argument("--runs", type=int)
    p_s.add_argument("--seed", type=int)
    p_s.add_argument("--mode", choices=("bitstring", "condensed"))
    p_s.add_argument("--eps", type=float)
    p_s.add_argument("--budget", type=int, help="iteration cap per run")
    p_s.add_argument("--budgets",
                     help="comma-separated budgets: fixed-budget estimation")
    p_s.add_argument("--dist-file", dest="dist_file",
                     help="flip-count weights, one per line (custom algo)")
    p_s.add_argument("--fold", choices=("auto", "on", "off"),
                     help="accept by folded distance min(d, n-d)")
    p_s.add_argument("--trajectory",
                     help="write CSV (t, mean X_t); requires --budget")
    p_s.add_argument("--per-run", dest="per_run", action="store_const",
                     const=True, help="include per-run records in JSON")
    p_s.add_argument("--format", choices=("pretty", "csv", "json"),
                     default="json")
    p_s.add_argument("--config", help="key=value file mirroring the flags")
    p_s.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, BracketError, QuadratureError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
