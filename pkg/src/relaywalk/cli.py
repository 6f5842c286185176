"""Command-line front end: run configured experiments, emit CSV.

Subcommands map onto the library layers:

  simulate   Monte Carlo trials over a (k, n) grid; summary rows per combo.
  analytic   closed-form expected delays and optimal-n rows for the grid.
  covert     detection / covertness probabilities and best-k rows.
  sweep      delay-vs-covertness strategy sweep over n (analytic by
             default, Monte Carlo with --simulate).

Output is UTF-8 CSV with a comment block of '#'-prefixed metadata lines
recording the package version, the seed, and every parameter, so a run
can be reproduced from its artifact alone.  Identical config and seed
produce byte-identical files.  Config errors exit with status 2 and a
file:line message on stderr.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

from . import __version__, analytic, covert
from .config import ConfigError, ExperimentConfig, load_config
from .protocol import run_trials, simulate_trials, summarize
from .tradeoff import SweepPoint, pareto, sweep

_PRESET_DIR = Path(__file__).parent / "presets"


def preset_names() -> list[str]:
    return sorted(p.stem for p in _PRESET_DIR.glob("*.cfg"))


def resolve_config_path(arg: str) -> str:
    """A --config value is a path, or the bare name of a shipped preset."""
    if Path(arg).exists():
        return arg
    if "/" not in arg:
        for candidate in (_PRESET_DIR / arg, _PRESET_DIR / f"{arg}.cfg"):
            if candidate.exists():
                return str(candidate)
    known = ", ".join(preset_names())
    raise ConfigError(f"config not found: {arg!r} (presets: {known})")


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _metadata(cfg: ExperimentConfig, mode: str, extra: dict | None = None) -> list[str]:
    """One '# key = value' line per parameter; no timestamps, nothing
    machine-specific, so identical runs stay byte-identical."""
    pairs: list[tuple[str, object]] = [("version", __version__), ("mode", mode)]
    pairs.append(("vertices", cfg.v))
    if cfg.d == "complete":
        pairs.append(("complete", True))
    else:
        pairs.append(("degree", cfg.d))
    pairs.append(("relays", cfg.r))
    pairs.append(("message_len", cfg.m))
    if cfg.k_values is not None:
        pairs.append(("data_chunks", ",".join(map(str, cfg.k_values))))
    if cfg.n_values is not None:
        pairs.append(("coded_chunks", ",".join(map(str, cfg.n_values))))
    pairs.append(("time_model", cfg.time_model))
    if cfg.time_model == "random":
        pairs.append(("step_dist", cfg.step_dist))
        pairs.append(("step_mean", cfg.step_mean))
        pairs.append(("rate", cfg.rate))
    pairs.append(("warden_model", cfg.warden_model))
    if cfg.wardens is not None:
        pairs.append(("wardens", cfg.wardens))
    if cfg.window is not None:
        pairs.append(("window", cfg.window))
    if mode in ("simulate", "sweep"):
        pairs.append(("trials", cfg.trials))
        pairs.append(("seed", cfg.seed))
    if mode == "sweep":
        pairs.append(("strategies", ",".join(cfg.strategies)))
        pairs.append(("n_range", ",".join(map(str, cfg.n_range or []))))
        if cfg.fixed_k is not None:
            pairs.append(("fixed_k", cfg.fixed_k))
        if cfg.fixed_offset is not None:
            pairs.append(("fixed_offset", cfg.fixed_offset))
    for key, value in (extra or {}).items():
        pairs.append((key, value))
    if mode in ("simulate", "covert"):
        pairs.append((
            "chunk_len_note",
            "simulated payloads use ceil(message_len / k) bytes; "
            "formulas use the ideal message_len / k",
        ))
    return [f"# {key} = {_fmt(value)}" for key, value in pairs]


def _emit(out: str | None, meta: list[str], header: list[str], rows: list[list]) -> None:
    def write(fh):
        for line in meta:
            fh.write(line + "\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(cell) for cell in row])

    if out is None:
        write(sys.stdout)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            write(fh)


# ----------------------------------------------------------------------
# subcommands


def _require_grid(cfg: ExperimentConfig, mode: str) -> list[tuple[int, int]]:
    if cfg.k_values is None or cfg.n_values is None:
        raise ConfigError(
            f"{mode} mode requires 'data_chunks' and 'coded_chunks' in [code]",
            cfg.source,
        )
    return cfg.grid()


def cmd_simulate(cfg: ExperimentConfig, per_trial_out: str | None) -> tuple[list[str], list[list]]:
    grid = _require_grid(cfg, "simulate")
    summaries = {}
    trial_rows: list[list] = []
    for k, n in grid:
        scenario = cfg.scenario(k, n)
        if per_trial_out is None:
            summaries[(k, n)] = run_trials(scenario)
        else:
            results = simulate_trials(scenario)
            summaries[(k, n)] = summarize(results)
            for idx, res in enumerate(results):
                trial_rows.append([
                    k, n, idx,
                    res.disseminate_steps, res.collect_steps,
                    res.disseminate_time, res.collect_time, res.total_time,
                    res.detected, res.detections,
                ])
    best_n = {
        k: min((n for kk, n in grid if kk == k),
               key=lambda n: summaries[(k, n)].total_time.mean)
        for k in {k for k, _ in grid}
    }
    header = [
        "k", "n", "trials",
        "disseminate_steps", "disseminate_steps_ci",
        "collect_steps", "collect_steps_ci",
        "disseminate_time", "disseminate_time_ci",
        "collect_time", "collect_time_ci",
        "total_time", "total_time_ci",
        "covert_rate", "covert_rate_ci",
        "argmin_n",
    ]
    rows = []
    for k, n in grid:
        s = summaries[(k, n)]
        rows.append([
            k, n, s.trials,
            s.disseminate_steps.mean, s.disseminate_steps.ci95,
            s.collect_steps.mean, s.collect_steps.ci95,
            s.disseminate_time.mean, s.disseminate_time.ci95,
            s.collect_time.mean, s.collect_time.ci95,
            s.total_time.mean, s.total_time.ci95,
            s.covertness.mean, s.covertness.ci95,
            best_n[k],
        ])
    if per_trial_out is not None:
        trial_header = [
            "k", "n", "trial",
            "disseminate_steps", "collect_steps",
            "disseminate_time", "collect_time", "total_time",
            "detected", "detections",
        ]
        _emit(per_trial_out, _metadata(cfg, "simulate"), trial_header, trial_rows)
    return header, rows


def cmd_analytic(cfg: ExperimentConfig) -> tuple[list[str], list[list]]:
    grid = _require_grid(cfg, "analytic")
    header = ["k", "n", "delay", "walking", "transmission", "best_n", "tie"]
    rows: list[list] = []
    random_model = cfg.time_model == "random"
    for k, n in grid:
        if random_model:
            est = analytic.expected_delay_random(
                cfg.v, cfg.d, cfg.r, n, k, cfg.m, cfg.rate, cfg.step_mean
            )
            _, best = analytic.optimal_n_random(
                cfg.v, cfg.d, cfg.r, k, cfg.m, cfg.rate, cfg.step_mean
            )
            tie = False
        else:
            est = analytic.expected_delay_const(cfg.v, cfg.d, cfg.r, n, k)
            best, tie = analytic.optimal_n_const(cfg.r, k)
        rows.append([k, n, est.value, est.walking, est.transmission, best, tie])
    return header, rows


def cmd_covert(cfg: ExperimentConfig) -> tuple[list[str], list[list]]:
    grid = _require_grid(cfg, "covert")
    model = cfg.detection_model()
    if model is None:
        raise ConfigError("covert mode requires a warden model", cfg.source)
    header = ["k", "n", "chunk_len", "p_d", "p_c", "best_k"]
    rows: list[list] = []
    for k, n in grid:
        report = covert.evaluate(model, n, k, cfg.m)
        best = covert.argmax_k_covertness(model, n, cfg.m)
        rows.append([k, n, cfg.m / k, report.p_d, report.p_c, best])
    return header, rows


def cmd_sweep(cfg: ExperimentConfig, simulate: bool) -> tuple[list[str], list[list]]:
    if cfg.n_range is None:
        raise ConfigError("sweep mode requires 'n_range' in [run]", cfg.source)
    sweep_cfg = cfg.sweep_config()
    points: list[SweepPoint] = []
    for strategy in cfg.sweep_strategies():
        points.extend(sweep(sweep_cfg, strategy, cfg.n_range, simulate=simulate))
    frontier = set(map(id, pareto(points)))
    header = ["strategy", "n", "k", "delay", "delay_ci", "p_c", "p_c_ci", "pareto_flag"]
    rows = [
        [p.strategy, p.n, p.k, p.delay, p.delay_ci, p.p_c, p.p_c_ci, id(p) in frontier]
        for p in points
    ]
    return header, rows


# ----------------------------------------------------------------------
# entry point


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relaywalk",
        description="coded message passing over random walks: simulator and analytics",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (
        ("simulate", "run Monte Carlo trials over the configured (k, n) grid"),
        ("analytic", "evaluate closed-form delays and optima for the grid"),
        ("covert", "evaluate detection and covertness probabilities"),
        ("sweep", "trade off delay against covertness across n"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("--config", required=True,
                       help="config file path or shipped preset name")
        p.add_argument("--seed", type=int, default=None, help="master seed (64-bit)")
        p.add_argument("--out", default=None, help="CSV output path (default stdout)")
        if name in ("simulate", "sweep"):
            p.add_argument("--trials", type=int, default=None,
                           help="Monte Carlo trials per grid point")
        if name == "simulate":
            p.add_argument("--per-trial-out", default=None,
                           help="also write one CSV row per trial to this path")
        if name == "sweep":
            p.add_argument("--simulate", action="store_true",
                           help="estimate sweep points by Monte Carlo instead of formulas")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = load_config(resolve_config_path(args.config))
        if args.seed is not None:
            if not 0 <= args.seed < 2**64:
                raise ConfigError("--seed must fit in 64 bits")
            cfg.seed = args.seed
        if getattr(args, "trials", None) is not None:
            if args.trials < 1:
                raise ConfigError("--trials must be positive")
            cfg.trials = args.trials
        if args.out is not None:
            cfg.out = args.out

        if args.command == "simulate":
            per_trial = getattr(args, "per_trial_out", None) or cfg.per_trial_out
            header, rows = cmd_simulate(cfg, per_trial)
        elif args.command == "analytic":
            header, rows = cmd_analytic(cfg)
        elif args.command == "covert":
            header, rows = cmd_covert(cfg)
        else:
            header, rows = cmd_sweep(cfg, args.simulate)
        extra = {"evaluation": "simulated" if args.simulate else "analytic"} \
            if args.command == "sweep" else None
        _emit(cfg.out, _metadata(cfg, args.command, extra), header, rows)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
