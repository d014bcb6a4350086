"""CLI front end: load a run config, build the pipeline, explore, report.

Each exploration run writes a self-describing bundle into its own directory:

    config.yaml        resolved configuration snapshot (including the seed)
    baseline.json      precise-run record anchoring all deltas
    baseline_outputs.csv
    trace.jsonl        one JSON record per step
    summary.json       min/solution/max per metric, stop cause, thresholds
    qtable.txt         final Q-table snapshot (warm-restart input)
    plots/             per-step series and windowed-reward CSVs + SVGs

The "solution" row of a summary is the configuration of the last executed
step; min and max are taken over the whole trace. Power and time deltas are
per-operation table costs summed over executed operations ("mW-units" and
"ns-units"), not circuit-level measurements.

Exit codes: 0 success, 2 configuration error, 3 runtime error.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import statistics
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import yaml

from . import agent as agent_mod
from . import kernels
from . import operators as ops
from . import reward as reward_mod
from .environment import ApproxEnv
from .errors import AxdseError, ConfigError, EmptyTrace, MixedBenchmarks

log = logging.getLogger("axdse")

SCHEMA_VERSION = 1
REWARD_WINDOW = 100  # steps per averaged-reward window

METRICS = ("d_power", "d_time", "d_acc")


@dataclass
class RunConfig:
    benchmark: str = "matmul"
    size_params: dict = field(default_factory=lambda: {"n": 10})
    input_seed: int = 1234
    width: int = 8
    catalog: str | None = None
    model_family: str = ops.FAMILY_AUTO
    characterize_method: str = "auto"
    mae_mode: str = kernels.MAE_ABSOLUTE
    alpha: float = 0.1
    gamma: float = 0.95
    epsilon: float = 0.3
    epsilon_decay: float = 0.999
    epsilon_floor: float = 0.05
    max_reward: float = 100.0
    max_cumulative: float | None = None
    acc_th: float | None = None  # None: derived from the baseline
    p_th: float | None = None
    t_th: float | None = None
    step_cap: int = 10_000
    seeds: list[int] = field(default_factory=lambda: [0])
    reset_on_violation: bool = False
    cache_executions: bool = False
    warm_start: str | None = None
    output_dir: str = "runs"

    _GROUPS = {"agent": ("alpha", "gamma", "epsilon", "epsilon_decay", "epsilon_floor"),
               "reward": ("max_reward", "max_cumulative", "acc_th", "p_th", "t_th")}
    _TOP = ("schema_version", "benchmark", "size_params", "input_seed", "width", "catalog",
            "model_family", "characterize_method", "mae_mode", "agent", "reward", "step_cap",
            "seeds", "reset_on_violation", "cache_executions", "warm_start", "output_dir")

    @classmethod
    def from_dict(cls, doc: dict, where: str = "<config>") -> "RunConfig":
        if not isinstance(doc, dict):
            raise ConfigError(f"{where}: config document must be a mapping")
        version = doc.get("schema_version")
        if version != SCHEMA_VERSION:
            raise ConfigError(f"{where}: field 'schema_version' must be {SCHEMA_VERSION}, got {version!r}")
        unknown = set(doc) - set(cls._TOP)
        if unknown:
            raise ConfigError(f"{where}: unknown fields {sorted(unknown)}")

        flat = {k: v for k, v in doc.items()
                if k not in ("schema_version", "agent", "reward")}
        for group, keys in cls._GROUPS.items():
            sub = doc.get(group) or {}
            if not isinstance(sub, dict):
                raise ConfigError(f"{where}: field {group!r} must be a mapping")
            bad = set(sub) - set(keys)
            if bad:
                raise ConfigError(f"{where}: unknown fields {sorted(bad)} in {group!r}")
            flat.update(sub)
        try:
            cfg = cls(**flat)
        except TypeError as exc:
            raise ConfigError(f"{where}: {exc}") from exc
        cfg.validate(where)
        return cfg

    @classmethod
    def from_file(cls, path: str | Path) -> "RunConfig":
        path = Path(path)
        if not path.exists():
            raise ConfigError(f"config file not found: {path}")
        with open(path, "r", encoding="utf-8") as fh:
            doc = yaml.safe_load(fh)
        return cls.from_dict(doc, where=str(path))

    def validate(self, where: str = "<config>") -> None:
        if self.benchmark not in kernels.BENCHMARKS:
            raise ConfigError(f"{where}: field 'benchmark' must be one of "
                              f"{sorted(kernels.BENCHMARKS)}, got {self.benchmark!r}")
        if not self.seeds:
            raise ConfigError(f"{where}: field 'seeds' must be a non-empty list")
        if self.step_cap < 0:
            raise ConfigError(f"{where}: field 'step_cap' must be >= 0")
        if self.catalog is not None and not Path(self.catalog).exists():
            raise ConfigError(f"{where}: field 'catalog' names a missing file: {self.catalog}")
        if self.warm_start is not None and not Path(self.warm_start).exists():
            raise ConfigError(f"{where}: field 'warm_start' names a missing file: {self.warm_start}")
        if self.mae_mode not in (kernels.MAE_ABSOLUTE, kernels.MAE_SIGNED):
            raise ConfigError(f"{where}: field 'mae_mode' must be 'absolute' or 'signed'")
        if self.model_family not in ops.FAMILIES:
            raise ConfigError(f"{where}: field 'model_family' must be one of {ops.FAMILIES}")

    def to_dict(self, seed: int | None = None) -> dict:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "benchmark": self.benchmark,
            "size_params": dict(self.size_params),
            "input_seed": self.input_seed,
            "width": self.width,
            "catalog": self.catalog,
            "model_family": self.model_family,
            "characterize_method": self.characterize_method,
            "mae_mode": self.mae_mode,
            "agent": {k: getattr(self, k) for k in self._GROUPS["agent"]},
            "reward": {k: getattr(self, k) for k in self._GROUPS["reward"]},
            "step_cap": self.step_cap,
            "seeds": [seed] if seed is not None else list(self.seeds),
            "reset_on_violation": self.reset_on_violation,
            "cache_executions": self.cache_executions,
            "warm_start": self.warm_start,
            "output_dir": self.output_dir,
        }
        return doc

    def run_dir_name(self, seed: int) -> str:
        sizes = "_".join(f"{k}{v}" for k, v in sorted(self.size_params.items()))
        return f"{self.benchmark}_{sizes}_w{self.width}_seed{seed}"


@dataclass(frozen=True)
class RunSummary:
    benchmark: str
    size_params: dict
    width: int
    seed: int
    steps_executed: int
    stop_cause: str
    cumulative_reward: float
    metrics: dict  # metric -> {"min", "solution", "max"}
    solution: dict  # adder, multiplier, selection, step
    thresholds: dict  # acc_th, p_th, t_th
    baseline: dict  # power_precise, time_precise, avg_output

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "benchmark": self.benchmark,
            "size_params": dict(self.size_params),
            "width": self.width,
            "seed": self.seed,
            "steps_executed": self.steps_executed,
            "stop_cause": self.stop_cause,
            "cumulative_reward": self.cumulative_reward,
            "metrics": self.metrics,
            "solution": self.solution,
            "thresholds": self.thresholds,
            "baseline": self.baseline,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "RunSummary":
        fields = {k: doc[k] for k in (
            "benchmark", "size_params", "width", "seed", "steps_executed", "stop_cause",
            "cumulative_reward", "metrics", "solution", "thresholds", "baseline")}
        return cls(**fields)


def summarize_trace(records: list[dict], *, benchmark: str, size_params: dict, width: int,
                    seed: int, stop_cause: str, thresholds: dict, baseline: dict) -> RunSummary:
    """Build a RunSummary from per-step records; the solution row is the
    final step's configuration and observations."""
    if not records:
        raise EmptyTrace("cannot summarize an empty trace")
    last = records[-1]
    metrics = {
        m: {
            "min": min(r[m] for r in records),
            "solution": last[m],
            "max": max(r[m] for r in records),
        }
        for m in METRICS
    }
    return RunSummary(
        benchmark=benchmark,
        size_params=dict(size_params),
        width=width,
        seed=seed,
        steps_executed=len(records),
        stop_cause=stop_cause,
        cumulative_reward=last["cumulative"],
        metrics=metrics,
        solution={
            "step": last["step"],
            "adder": last["adder"],
            "multiplier": last["multiplier"],
            "selection": list(last["selection"]),
        },
        thresholds=thresholds,
        baseline=baseline,
    )


# ---------------------------------------------------------------------------
# artifact IO
# ---------------------------------------------------------------------------


def write_trace(path: str | Path, steps) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for step in steps:
            rec = step.to_record() if hasattr(step, "to_record") else dict(step)
            fh.write(json.dumps(rec, sort_keys=True) + "\n")


def read_trace(path: str | Path) -> list[dict]:
    with open(path, "r", encoding="utf-8") as fh:
        return [json.loads(line) for line in fh if line.strip()]


def _write_json(path: Path, doc: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


# ---------------------------------------------------------------------------
# exploration
# ---------------------------------------------------------------------------


def build_pipeline(cfg: RunConfig):
    """Construct (program, catalog, models, baseline, reward config) once;
    everything here is reusable across seeds."""
    catalog = ops.load_catalog(cfg.catalog) if cfg.catalog else ops.bundled_catalog()
    program = kernels.make_program(cfg.benchmark, cfg.size_params,
                                   width=cfg.width, input_seed=cfg.input_seed)
    add_models = ops.calibrate_width_class(catalog, ops.ADDER, cfg.width,
                                           cfg.model_family, method=cfg.characterize_method)
    mul_models = ops.calibrate_width_class(catalog, ops.MULTIPLIER, cfg.width,
                                           cfg.model_family, method=cfg.characterize_method)
    base = kernels.baseline(program, catalog)
    derived = reward_mod.make_thresholds(base, max_reward=cfg.max_reward,
                                         max_cumulative=cfg.max_cumulative)
    reward_cfg = reward_mod.RewardConfig(
        max_reward=cfg.max_reward,
        acc_th=derived.acc_th if cfg.acc_th is None else cfg.acc_th,
        p_th=derived.p_th if cfg.p_th is None else cfg.p_th,
        t_th=derived.t_th if cfg.t_th is None else cfg.t_th,
        max_cumulative=cfg.max_cumulative,
    )
    log.info("baseline: power=%r mW-units, time=%r ns-units, avg_output=%r",
             base.power_precise, base.time_precise, base.avg_output)
    log.info("thresholds: acc_th=%r, p_th=%r, t_th=%r, R=%r",
             reward_cfg.acc_th, reward_cfg.p_th, reward_cfg.t_th, reward_cfg.max_reward)
    return program, catalog, add_models, mul_models, base, reward_cfg


def explore_single(cfg: RunConfig, seed: int, pipeline=None) -> RunSummary:
    """Run one seeded exploration and write its artifact bundle."""
    if pipeline is None:
        pipeline = build_pipeline(cfg)
    program, catalog, add_models, mul_models, base, reward_cfg = pipeline

    env = ApproxEnv(program, catalog, add_models, mul_models,
                    mae_mode=cfg.mae_mode, cache_executions=cfg.cache_executions,
                    baseline=base)
    if cfg.warm_start:
        q = agent_mod.QTable.load(cfg.warm_start)
        if q.n_actions != env.n_actions:
            raise ConfigError(f"warm_start table has {q.n_actions} actions, env needs {env.n_actions}")
    else:
        q = agent_mod.QTable(n_actions=env.n_actions, alpha=cfg.alpha, gamma=cfg.gamma,
                             epsilon=cfg.epsilon, epsilon_decay=cfg.epsilon_decay,
                             epsilon_floor=cfg.epsilon_floor)
    rng = np.random.default_rng(seed)
    result = agent_mod.run_episode(env, q, reward_cfg, cfg.step_cap, rng,
                                   reset_on_violation=cfg.reset_on_violation)

    run_dir = Path(cfg.output_dir) / cfg.run_dir_name(seed)
    run_dir.mkdir(parents=True, exist_ok=True)
    with open(run_dir / "config.yaml", "w", encoding="utf-8") as fh:
        yaml.safe_dump(cfg.to_dict(seed=seed), fh, sort_keys=False)
    baseline_doc = {
        "power_precise": base.power_precise,
        "time_precise": base.time_precise,
        "avg_output": base.avg_output,
    }
    _write_json(run_dir / "baseline.json", baseline_doc)
    with open(run_dir / "baseline_outputs.csv", "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["index", "output"])
        writer.writerows(enumerate(int(v) for v in base.outputs))
    write_trace(run_dir / "trace.jsonl", result.steps)
    q.save(run_dir / "qtable.txt")

    thresholds = {"acc_th": reward_cfg.acc_th, "p_th": reward_cfg.p_th, "t_th": reward_cfg.t_th}
    summary = summarize_trace(
        [s.to_record() for s in result.steps],
        benchmark=cfg.benchmark, size_params=cfg.size_params, width=cfg.width, seed=seed,
        stop_cause=result.stop_cause, thresholds=thresholds, baseline=baseline_doc,
    )
    _write_json(run_dir / "summary.json", summary.to_dict())
    emit_plots(read_trace(run_dir / "trace.jsonl"), run_dir / "plots")
    log.info("seed %d: %d steps, stop=%s, solution adder=%s multiplier=%s d_acc=%.4g",
             seed, summary.steps_executed, summary.stop_cause,
             summary.solution["adder"], summary.solution["multiplier"],
             summary.metrics["d_acc"]["solution"])
    return summary


def explore(cfg: RunConfig) -> list[RunSummary]:
    """Fan out the configured seeds as independent sequential explorations."""
    pipeline = build_pipeline(cfg)
    return [explore_single(cfg, seed, pipeline) for seed in cfg.seeds]


# ---------------------------------------------------------------------------
# plot series
# ---------------------------------------------------------------------------


def reward_windows(records: list[dict], window: int = REWARD_WINDOW) -> list[dict]:
    """Mean reward per consecutive window; a trailing partial window is
    averaged over its actual length."""
    out = []
    for start in range(0, len(records), window):
        chunk = records[start:start + window]
        out.append({
            "window": start // window,
            "start": start,
            "end": start + len(chunk) - 1,
            "steps": len(chunk),
            "mean_reward": sum(r["reward"] for r in chunk) / len(chunk),
        })
    return out


def emit_plots(trace: list[dict], out_dir: str | Path) -> list[Path]:
    """Write per-step metric series and windowed-reward series as CSV plus
    SVG renders. Returns the written paths."""
    if not trace:
        raise EmptyTrace("cannot plot an empty trace")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []

    metrics_csv = out_dir / "metrics.csv"
    with open(metrics_csv, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["step", "d_power", "d_time", "d_acc", "reward", "cumulative"])
        for r in trace:
            writer.writerow([r["step"], r["d_power"], r["d_time"], r["d_acc"],
                             r["reward"], r["cumulative"]])
    written.append(metrics_csv)

    windows = reward_windows(trace)
    reward_csv = out_dir / "reward_windows.csv"
    with open(reward_csv, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["window", "start", "end", "steps", "mean_reward"])
        for w in windows:
            writer.writerow([w["window"], w["start"], w["end"], w["steps"], w["mean_reward"]])
    written.append(reward_csv)

    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    steps = [r["step"] for r in trace]
    fig, axes = plt.subplots(3, 1, sharex=True, figsize=(8, 7))
    for ax, metric, label in zip(
        axes, METRICS, ["power reduction (mW-units)", "time reduction (ns-units)", "accuracy degradation"]
    ):
        ax.plot(steps, [r[metric] for r in trace], linewidth=0.7)
        ax.set_ylabel(label, fontsize=8)
        ax.grid(True, alpha=0.3)
    axes[-1].set_xlabel("step")
    fig.suptitle("exploration outcomes per step")
    metrics_svg = out_dir / "metrics.svg"
    fig.savefig(metrics_svg)
    plt.close(fig)
    written.append(metrics_svg)

    fig, ax = plt.subplots(figsize=(8, 4))
    ax.plot([w["start"] for w in windows], [w["mean_reward"] for w in windows], marker="o")
    ax.set_xlabel("step")
    ax.set_ylabel(f"mean reward per {REWARD_WINDOW}-step window")
    ax.grid(True, alpha=0.3)
    reward_svg = out_dir / "reward.svg"
    fig.savefig(reward_svg)
    plt.close(fig)
    written.append(reward_svg)
    return written


# ---------------------------------------------------------------------------
# multi-seed comparison
# ---------------------------------------------------------------------------


def compare_runs(summaries: list[RunSummary]) -> dict:
    """Median and IQR of each solution metric across seeds; flags seeds whose
    stop cause differs from the most common one."""
    if not summaries:
        raise MixedBenchmarks("no summaries to compare")
    ref = (summaries[0].benchmark, summaries[0].size_params, summaries[0].width)
    for s in summaries[1:]:
        if (s.benchmark, s.size_params, s.width) != ref:
            raise MixedBenchmarks(
                f"summaries mix benchmarks: {ref} vs {(s.benchmark, s.size_params, s.width)}"
            )
    table: dict = {
        "benchmark": summaries[0].benchmark,
        "size_params": dict(summaries[0].size_params),
        "width": summaries[0].width,
        "seeds": [s.seed for s in summaries],
        "metrics": {},
    }
    for m in METRICS:
        values = sorted(s.metrics[m]["solution"] for s in summaries)
        q1, q3 = (np.percentile(values, 25), np.percentile(values, 75)) if len(values) > 1 else (values[0], values[0])
        table["metrics"][m] = {
            "median": statistics.median(values),
            "iqr": float(q3 - q1),
            "values": values,
        }
    causes = [s.stop_cause for s in summaries]
    modal = max(set(causes), key=causes.count)
    table["stop_causes"] = {str(s.seed): s.stop_cause for s in summaries}
    table["divergent_stop_seeds"] = [s.seed for s in summaries if s.stop_cause != modal]
    return table


def format_comparison(table: dict) -> str:
    lines = [
        f"benchmark: {table['benchmark']} {table['size_params']} (width {table['width']})",
        f"seeds: {table['seeds']}",
    ]
    for m, stats in table["metrics"].items():
        lines.append(f"  {m}: median={stats['median']:.6g} iqr={stats['iqr']:.6g}")
    lines.append(f"stop causes: {table['stop_causes']}")
    if table["divergent_stop_seeds"]:
        lines.append(f"NOTE: seeds {table['divergent_stop_seeds']} stopped for a different cause")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# CLI
# ---------------------------------------------------------------------------


def _add_config_arg(parser):
    parser.add_argument("-c", "--config", required=True, help="YAML run configuration")


def _apply_overrides(cfg: RunConfig, args) -> RunConfig:
    if getattr(args, "seeds", None):
        cfg.seeds = [int(s) for s in args.seeds.split(",")]
    if getattr(args, "step_cap", None) is not None:
        cfg.step_cap = args.step_cap
    if getattr(args, "output_dir", None):
        cfg.output_dir = args.output_dir
    cfg.validate("<cli overrides>")
    return cfg


def _cmd_run(args) -> int:
    cfg = _apply_overrides(RunConfig.from_file(args.config), args)
    summaries = explore(cfg)
    for s in summaries:
        print(f"seed {s.seed}: steps={s.steps_executed} stop={s.stop_cause} "
              f"adder={s.solution['adder']} multiplier={s.solution['multiplier']} "
              f"selection={s.solution['selection']} "
              f"d_power={s.metrics['d_power']['solution']:.6g} "
              f"d_time={s.metrics['d_time']['solution']:.6g} "
              f"d_acc={s.metrics['d_acc']['solution']:.6g}")
    if len(summaries) > 1:
        print(format_comparison(compare_runs(summaries)))
    return 0


def _cmd_baseline(args) -> int:
    cfg = RunConfig.from_file(args.config)
    program, catalog, _, _, base, reward_cfg = build_pipeline(cfg)
    print(f"benchmark: {cfg.benchmark} {cfg.size_params} (width {cfg.width})")
    print(f"operations: {program.n_add_ops} additions, {program.n_mul_ops} multiplications")
    print(f"power_precise: {base.power_precise!r} mW-units")
    print(f"time_precise:  {base.time_precise!r} ns-units")
    print(f"avg_output:    {base.avg_output!r}")
    print(f"thresholds: acc_th={reward_cfg.acc_th!r} p_th={reward_cfg.p_th!r} t_th={reward_cfg.t_th!r}")
    return 0


def _cmd_characterize(args) -> int:
    catalog = ops.load_catalog(args.catalog) if args.catalog else ops.bundled_catalog()
    group = catalog.width_class(args.kind, args.width)
    if not group:
        raise ConfigError(f"catalog has no {args.width}-bit {args.kind} entries")
    if args.sweep:
        spec = group[0]
        print(f"{args.width}-bit {args.kind} family sweep ({args.family})")
        print(f"{'mode':>14} {'k':>3} {'mred_%':>12} {'mae':>14}")
        for mode, k in ops._family_members(spec, args.family):
            stats = ops.characterize(ops.FunctionalModel(spec=spec, mode=mode, k=k),
                                     method=args.method)
            print(f"{mode:>14} {k:>3} {stats.mred:>12.5f} {stats.mae:>14.4f}")
        return 0
    print(f"{'name':>10} {'target_mred_%':>14} {'mode':>14} {'k':>3} {'achieved_mred_%':>16}")
    for spec in group:
        model = ops.calibrate(spec, args.family, method=args.method)
        print(f"{spec.name:>10} {spec.mred:>14.4f} {model.mode:>14} {model.k:>3} "
              f"{model.achieved_mred:>16.5f}")
    return 0


def _cmd_plot(args) -> int:
    trace = read_trace(args.trace)
    out_dir = args.output_dir or (Path(args.trace).parent / "plots")
    for path in emit_plots(trace, out_dir):
        print(f"wrote {path}")
    return 0


def _cmd_compare(args) -> int:
    summaries = []
    for path in args.summaries:
        with open(path, "r", encoding="utf-8") as fh:
            summaries.append(RunSummary.from_dict(json.load(fh)))
    print(format_comparison(compare_runs(summaries)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="axdse",
        description="Q-learning exploration of approximate adder/multiplier configurations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run seeded explorations and write artifact bundles")
    _add_config_arg(p_run)
    p_run.add_argument("--seeds", help="comma-separated seed list override")
    p_run.add_argument("--step-cap", type=int, dest="step_cap", help="step cap override")
    p_run.add_argument("--output-dir", dest="output_dir", help="output directory override")
    p_run.set_defaults(func=_cmd_run)

    p_base = sub.add_parser("baseline", help="print the precise baseline and derived thresholds")
    _add_config_arg(p_base)
    p_base.set_defaults(func=_cmd_baseline)

    p_char = sub.add_parser("characterize", help="calibrate catalog operators or sweep a family")
    p_char.add_argument("--catalog", help="catalog YAML (default: bundled)")
    p_char.add_argument("--kind", choices=list(ops.KINDS), default=ops.ADDER)
    p_char.add_argument("--width", type=int, default=8)
    p_char.add_argument("--family", choices=list(ops.FAMILIES), default=ops.FAMILY_AUTO)
    p_char.add_argument("--method", choices=["auto", "exhaustive", "sampled"], default="auto")
    p_char.add_argument("--sweep", action="store_true",
                        help="print the k-vs-error sweep instead of calibrating")
    p_char.set_defaults(func=_cmd_characterize)

    p_plot = sub.add_parser("plot", help="regenerate plot series from a trace file")
    p_plot.add_argument("trace", help="trace.jsonl path")
    p_plot.add_argument("-o", "--output-dir", dest="output_dir")
    p_plot.set_defaults(func=_cmd_plot)

    p_cmp = sub.add_parser("compare", help="aggregate summaries across seeds")
    p_cmp.add_argument("summaries", nargs="+", help="summary.json paths")
    p_cmp.set_defaults(func=_cmd_compare)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (AxdseError, OSError, json.JSONDecodeError, yaml.YAMLError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
