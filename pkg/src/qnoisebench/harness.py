"""Experiment runner: sweeps noise strength (and depth where applicable)
over a benchmark, Monte Carlo over inputs and randomization seeds, and
writes the aggregated rows as CSV or JSON.

Determinism: every trial derives its own seeds from
(master seed, sweep index, trial index), so results do not depend on
execution order and a fixed config reproduces its output byte for byte.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass

import numpy as np

from .benchmarks import (
    BENCHMARKS,
    MaxCutGraph,
    build_benchmark,
    maxcut_expectation,
)
from .circuits import CLIFFORD_T, simulate
from .compiling import interleave_idle
from .errors import ConfigError, IoError
from .metrics import process_fidelity
from .noise import NOISE_KINDS, NoNoise, noise_level_table, noise_model_for
from .states import DensityMatrix, ket_to_density, random_product_state

CSV_HEADER = "benchmark,noise,param,depth,rc,metric,mean,stderr,trials,seed"
_FIELDS = tuple(CSV_HEADER.split(","))

DEFAULT_TRIALS = 100
DEFAULT_LEVELS = (0, 1, 2, 3)


def _round10(x: float) -> float:
    # Quantize once at row construction so CSV (%.10g) and JSON carry the
    # same value and format round trips are exact.
    return float(f"{float(x):.10g}")


@dataclass(frozen=True)
class ResultRow:
    benchmark: str
    noise: str
    param: float
    depth: int
    rc: bool
    metric: str
    mean: float
    stderr: float
    trials: int
    seed: int


@dataclass(frozen=True)
class ExperimentConfig:
    """One benchmark x noise sweep. `levels` indexes the standard strength
    table; `sweep` = (start, stop, step) takes raw channel parameters
    instead. `depth_range` = (start, stop, step) applies to the sweepable
    benchmarks only."""

    benchmark: str
    noise: str
    levels: tuple[int, ...] | None = None
    sweep: tuple[float, float, float] | None = None
    rc: bool = False
    trials: int = DEFAULT_TRIALS
    depth_range: tuple[int, int, int] | None = None
    seed: int = 0
    out: str | None = None
    fmt: str = "csv"

    def validate(self) -> "ExperimentConfig":
        if self.benchmark not in BENCHMARKS:
            raise ConfigError(
                f"benchmark: unknown id {self.benchmark!r}; "
                f"choose from {sorted(BENCHMARKS)}"
            )
        if self.noise != "none" and self.noise not in NOISE_KINDS:
            raise ConfigError(
                f"noise: unknown kind {self.noise!r}; "
                f"choose from {list(NOISE_KINDS) + ['none']}"
            )
        if self.levels is not None and self.sweep is not None:
            raise ConfigError("levels/sweep: give one, not both")
        if self.levels is not None:
            if not self.levels:
                raise ConfigError("levels: empty")
            for lv in self.levels:
                if not 0 <= int(lv) <= 3:
                    raise ConfigError(f"levels: {lv} outside 0..3")
        if self.sweep is not None:
            start, stop, step = self.sweep
            if step <= 0:
                raise ConfigError(f"sweep: step {step} must be > 0")
            if stop < start:
                raise ConfigError(f"sweep: stop {stop} below start {start}")
        if self.trials < 1:
            raise ConfigError(f"trials: {self.trials} must be >= 1")
        spec = BENCHMARKS[self.benchmark]
        if spec.depth_range is None:
            if self.depth_range is not None:
                raise ConfigError(
                    f"depth_range: {self.benchmark} has a fixed depth")
        else:
            if self.depth_range is None:
                raise ConfigError(
                    f"depth_range: required for {self.benchmark}")
            start, stop, step = self.depth_range
            lo, hi = spec.depth_range
            if step <= 0:
                raise ConfigError(f"depth_range: step {step} must be > 0")
            if start < lo or stop > hi or stop < start:
                raise ConfigError(
                    f"depth_range: ({start}, {stop}) outside {lo}..{hi}")
        if self.rc and spec.gate_set != CLIFFORD_T:
            raise ConfigError(
                f"rc: {self.benchmark} uses parameterized rotations; "
                "randomized compiling needs a Clifford+T circuit"
            )
        if self.fmt not in ("csv", "json"):
            raise ConfigError(f"fmt: {self.fmt!r} is not csv or json")
        return self


def _sweep_params(cfg: ExperimentConfig) -> list[float]:
    if cfg.noise == "none":
        return [0.0]
    if cfg.sweep is not None:
        start, stop, step = cfg.sweep
        count = int(np.floor((stop - start) / step + 1e-9)) + 1
        return [start + k * step for k in range(count)]
    levels = cfg.levels if cfg.levels is not None else DEFAULT_LEVELS
    return [_level_param(cfg.noise, int(lv)) for lv in levels]


def _level_param(kind: str, level: int) -> float:
    model = noise_level_table(kind, level)
    if kind == "pauli":
        return model.ex + model.ey + model.ez
    if kind == "coherent":
        return model.theta
    if kind == "pauli_coherent":
        return model.ex
    return model.gamma


def _noise_for(cfg: ExperimentConfig, param: float):
    if cfg.noise == "none":
        return NoNoise()
    return noise_model_for(cfg.noise, param)


def _depths(cfg: ExperimentConfig) -> list[int | None]:
    if cfg.depth_range is None:
        return [None]
    start, stop, step = cfg.depth_range
    return list(range(start, stop + 1, step))


def run_experiment(cfg: ExperimentConfig) -> list[ResultRow]:
    """All sweep points of the config, each aggregated over cfg.trials runs.

    Per trial: fresh random product input (the QAOA circuits keep their
    fixed all-zeros input), fresh randomized-compiling seed, and for the
    random benchmark a fresh circuit. The noiseless reference reuses the
    same input, circuit, and RC seed."""
    cfg.validate()
    spec = BENCHMARKS[cfg.benchmark]
    graph = MaxCutGraph.hypercube() if spec.metric == "expectation_value" else None
    rows = []
    sweep_idx = 0
    for param in _sweep_params(cfg):
        noise = _noise_for(cfg, param)
        for depth in _depths(cfg):
            fixed_circ = None
            if cfg.benchmark != "random":
                fixed_circ = build_benchmark(cfg.benchmark, depth=depth)
            values = np.empty(cfg.trials)
            for t in range(cfg.trials):
                ss = np.random.SeedSequence((cfg.seed, sweep_idx, t))
                input_seed, circ_seed, rc_seed = ss.spawn(3)
                circ = fixed_circ
                if circ is None:
                    circ = build_benchmark(cfg.benchmark, depth=depth,
                                           seed=circ_seed)
                    if cfg.rc:
                        circ = interleave_idle(circ)
                if spec.metric == "expectation_value":
                    state = DensityMatrix.basis(spec.n_qubits, 0)
                else:
                    state = ket_to_density(
                        random_product_state(spec.n_qubits, seed=input_seed))
                noisy = simulate(circ, state, noise=noise, rc=cfg.rc,
                                 seed=rc_seed)
                if spec.metric == "expectation_value":
                    probs = np.real(np.diag(noisy.matrix))
                    values[t] = maxcut_expectation(probs, graph)
                else:
                    ref = simulate(circ, state, rc=cfg.rc, seed=rc_seed)
                    values[t] = process_fidelity(ref, noisy)
            mean = float(np.mean(values))
            stderr = 0.0
            if cfg.trials > 1:
                stderr = float(np.std(values, ddof=1) / np.sqrt(cfg.trials))
            # Swept benchmarks report the requested depth (the sweep point);
            # fixed ones report the built circuit's cycle count.
            row_depth = depth if depth is not None else fixed_circ.depth
            rows.append(ResultRow(
                benchmark=cfg.benchmark,
                noise=cfg.noise,
                param=_round10(param),
                depth=row_depth,
                rc=cfg.rc,
                metric=spec.metric,
                mean=_round10(mean),
                stderr=_round10(stderr),
                trials=cfg.trials,
                seed=cfg.seed,
            ))
            sweep_idx += 1
    rows.sort(key=lambda r: (r.noise, r.param, r.depth, r.rc))
    return rows


# ---------------------------------------------------------------------------
# Serialization.


def _row_record(row: ResultRow) -> dict:
    return {
        "benchmark": row.benchmark,
        "noise": row.noise,
        "param": row.param,
        "depth": row.depth,
        "rc": "on" if row.rc else "off",
        "metric": row.metric,
        "mean": row.mean,
        "stderr": row.stderr,
        "trials": row.trials,
        "seed": row.seed,
    }


def _record_row(rec: dict) -> ResultRow:
    return ResultRow(
        benchmark=str(rec["benchmark"]),
        noise=str(rec["noise"]),
        param=float(rec["param"]),
        depth=int(rec["depth"]),
        rc=str(rec["rc"]) == "on",
        metric=str(rec["metric"]),
        mean=float(rec["mean"]),
        stderr=float(rec["stderr"]),
        trials=int(rec["trials"]),
        seed=int(rec["seed"]),
    )


def rows_to_csv(rows: list[ResultRow]) -> str:
    lines = [CSV_HEADER]
    for row in rows:
        rec = _row_record(row)
        lines.append(",".join(
            f"{rec[f]:.10g}" if isinstance(rec[f], float) else str(rec[f])
            for f in _FIELDS))
    return "\n".join(lines) + "\n"


def rows_to_json(rows: list[ResultRow]) -> str:
    return json.dumps([_row_record(r) for r in rows], indent=2) + "\n"


def emit(rows: list[ResultRow], fmt: str, path: str) -> None:
    """Write rows to `path` as csv or json."""
    if not rows:
        raise ConfigError("emit: no rows to write")
    if fmt == "csv":
        text = rows_to_csv(rows)
    elif fmt == "json":
        text = rows_to_json(rows)
    else:
        raise ConfigError(f"fmt: {fmt!r} is not csv or json")
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def load_rows_csv(path: str) -> list[ResultRow]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        return [_record_row(rec) for rec in reader]


def load_rows_json(path: str) -> list[ResultRow]:
    with open(path) as fh:
        return [_record_row(rec) for rec in json.load(fh)]
