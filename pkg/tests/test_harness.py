"""Experiment harness: config validation, determinism, file round trips."""

import numpy as np
import pytest

from qnoisebench.errors import ConfigError, IoError
from qnoisebench.harness import (
    CSV_HEADER,
    ExperimentConfig,
    ResultRow,
    emit,
    load_rows_csv,
    load_rows_json,
    rows_to_csv,
    rows_to_json,
    run_experiment,
)


def idle_cfg(**kw):
    base = dict(benchmark="idle", noise="pauli", levels=(0, 1),
                trials=2, depth_range=(10, 10, 1))
    base.update(kw)
    return ExperimentConfig(**base)


# ---------------------------------------------------------------------------
# Validation.


def test_validate_accepts_good_config():
    assert idle_cfg().validate() is not None


@pytest.mark.parametrize("kw,field", [
    (dict(benchmark="teleport"), "benchmark"),
    (dict(noise="thermal"), "noise"),
    (dict(levels=(0,), sweep=(0.0, 0.01, 0.01)), "levels/sweep"),
    (dict(levels=()), "levels"),
    (dict(levels=(0, 5)), "levels"),
    (dict(levels=None, sweep=(0.0, 0.03, 0.0)), "sweep"),
    (dict(levels=None, sweep=(0.03, 0.0, 0.01)), "sweep"),
    (dict(trials=0), "trials"),
    (dict(depth_range=None), "depth_range"),
    (dict(depth_range=(10, 10, 0)), "depth_range"),
    (dict(depth_range=(1, 10, 2)), "depth_range"),
    (dict(depth_range=(10, 80, 10)), "depth_range"),
    (dict(fmt="xml"), "fmt"),
])
def test_validate_rejects_bad_fields(kw, field):
    with pytest.raises(ConfigError, match=field):
        idle_cfg(**kw).validate()


def test_validate_fixed_depth_benchmarks():
    cfg = ExperimentConfig(benchmark="qft", noise="pauli",
                           depth_range=(2, 10, 2))
    with pytest.raises(ConfigError, match="depth_range"):
        cfg.validate()
    ok = ExperimentConfig(benchmark="qft", noise="pauli", trials=1)
    assert ok.validate() is ok


def test_validate_rc_requires_clifford_t():
    cfg = ExperimentConfig(benchmark="qaoa", noise="pauli", rc=True, trials=1)
    with pytest.raises(ConfigError, match="rc"):
        cfg.validate()
    ok = ExperimentConfig(benchmark="qaoa_ct", noise="pauli", rc=True, trials=1)
    assert ok.validate() is ok


# ---------------------------------------------------------------------------
# Runs.


def test_header_golden():
    assert CSV_HEADER == "benchmark,noise,param,depth,rc,metric,mean,stderr,trials,seed"


def test_single_point_run_shape():
    rows = run_experiment(idle_cfg(levels=(1,)))
    assert len(rows) == 1
    row = rows[0]
    assert row.benchmark == "idle"
    assert row.noise == "pauli"
    assert row.param == pytest.approx(0.01)
    assert row.depth == 10
    assert row.metric == "process_fidelity"
    assert row.trials == 2
    text = rows_to_csv(rows)
    lines = text.splitlines()
    assert len(lines) == 2
    assert lines[0] == CSV_HEADER
    assert lines[1].startswith("idle,pauli,0.01,10,off,process_fidelity,")


def test_level_zero_gives_unit_fidelity():
    rows = run_experiment(idle_cfg(levels=(0,)))
    assert rows[0].mean == 1.0
    assert rows[0].stderr < 1e-12


def test_runs_are_deterministic():
    cfg = idle_cfg(levels=(1, 2), trials=3)
    a = run_experiment(cfg)
    b = run_experiment(cfg)
    assert a == b
    assert rows_to_csv(a) == rows_to_csv(b)


def test_seed_changes_results():
    # Amplitude damping depends on the input direction (symmetric Pauli on
    # an idle circuit does not), so a new master seed moves the mean.
    base = run_experiment(idle_cfg(noise="amplitude_damping", levels=(2,),
                                   trials=3))
    moved = run_experiment(idle_cfg(noise="amplitude_damping", levels=(2,),
                                    trials=3, seed=1))
    assert base[0].mean != moved[0].mean


def test_fidelity_decays_with_strength_and_depth():
    cfg = idle_cfg(levels=(1, 3), trials=10, depth_range=(10, 70, 30))
    rows = run_experiment(cfg)
    assert len(rows) == 6
    by_param = {}
    for r in rows:
        by_param.setdefault(r.param, []).append(r)
    for param, group in by_param.items():
        means = [r.mean for r in sorted(group, key=lambda r: r.depth)]
        assert means[0] > means[1] > means[2]
    weak = [r.mean for r in rows if r.param == pytest.approx(0.01)]
    strong = [r.mean for r in rows if r.param == pytest.approx(0.03)]
    assert all(w > s for w, s in zip(weak, strong))


def test_rows_come_back_sorted():
    cfg = idle_cfg(levels=(3, 0, 1), trials=1, depth_range=(10, 40, 30))
    rows = run_experiment(cfg)
    keys = [(r.noise, r.param, r.depth, r.rc) for r in rows]
    assert keys == sorted(keys)


def test_sweep_params_quantized():
    cfg = idle_cfg(levels=None, sweep=(0.0, 0.03, 0.01), trials=1)
    rows = run_experiment(cfg)
    assert [r.param for r in rows] == [0.0, 0.01, 0.02, 0.03]
    text = rows_to_csv(rows)
    assert ",0.01," in text and ",0.02," in text


def test_none_noise_single_param():
    rows = run_experiment(idle_cfg(noise="none", levels=None, trials=1))
    assert len(rows) == 1
    assert rows[0].param == 0.0
    assert rows[0].mean == 1.0


def test_random_benchmark_with_rc():
    cfg = ExperimentConfig(benchmark="random", noise="pauli", levels=(1,),
                           rc=True, trials=3, depth_range=(4, 4, 1))
    rows = run_experiment(cfg)
    assert len(rows) == 1
    assert rows[0].rc is True
    assert 0.0 < rows[0].mean <= 1.0
    assert ",on," in rows_to_csv(rows)


def test_qaoa_expectation_metric():
    cfg = ExperimentConfig(benchmark="qaoa", noise="none", trials=1)
    rows = run_experiment(cfg)
    assert rows[0].metric == "expectation_value"
    assert rows[0].depth == 11
    assert rows[0].mean == pytest.approx(6.0 + 4.0 / np.sqrt(3.0), abs=1e-6)
    assert rows[0].stderr == 0.0


def test_fixed_benchmark_reports_built_depth():
    cfg = ExperimentConfig(benchmark="qft", noise="none", trials=1)
    rows = run_experiment(cfg)
    assert rows[0].depth == 28
    assert rows[0].mean == 1.0


# ---------------------------------------------------------------------------
# Serialization.


def test_csv_round_trip(tmp_path):
    rows = run_experiment(idle_cfg(levels=(0, 2), trials=3,
                                   depth_range=(2, 10, 4)))
    path = tmp_path / "out.csv"
    emit(rows, "csv", str(path))
    assert path.read_text() == rows_to_csv(rows)
    assert load_rows_csv(str(path)) == rows


def test_json_round_trip(tmp_path):
    rows = run_experiment(idle_cfg(levels=(0, 2), trials=3))
    path = tmp_path / "out.json"
    emit(rows, "json", str(path))
    assert path.read_text() == rows_to_json(rows)
    assert load_rows_json(str(path)) == rows


def test_csv_and_json_agree(tmp_path):
    rows = run_experiment(idle_cfg(levels=(1,), trials=2))
    cpath, jpath = tmp_path / "r.csv", tmp_path / "r.json"
    emit(rows, "csv", str(cpath))
    emit(rows, "json", str(jpath))
    assert load_rows_csv(str(cpath)) == load_rows_json(str(jpath))


def test_emit_rejects_empty_and_bad_paths(tmp_path):
    rows = [ResultRow("idle", "none", 0.0, 10, False, "process_fidelity",
                      1.0, 0.0, 1, 0)]
    with pytest.raises(ConfigError):
        emit([], "csv", str(tmp_path / "x.csv"))
    with pytest.raises(ConfigError):
        emit(rows, "xml", str(tmp_path / "x.xml"))
    with pytest.raises(IoError):
        emit(rows, "csv", str(tmp_path / "missing" / "x.csv"))
