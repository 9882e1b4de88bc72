"""Experiment configs and the command line front end."""

import json
import subprocess
import sys

import numpy as np
import pytest

from jumpmc import cli
from jumpmc.artifacts import read_samples_csv, read_stats_json, read_trace_csv
from jumpmc.config import ExperimentConfig, apply_overrides
from jumpmc.errors import ConfigError

MINIMAL = {
    "model": {"kind": "tabular", "probs": [0.2, 0.5, 0.3]},
    "sampler": "zanella",
    "total_time": 20,
    "thinning": 2,
}

SPIN_TABU = {
    "model": {"kind": "spin", "n": 4, "interaction_scale": 1.0, "field": 0.0, "seed": 3},
    "sampler": "tabu",
    "total_time": 10,
    "thinning": 1,
}


def write_config(tmp_path, data, name="cfg.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


# ---------------------------------------------------------------------------
# config parsing and validation


def test_minimal_config_defaults():
    cfg = ExperimentConfig.from_dict(MINIMAL)
    assert cfg.balancing == "barker"
    assert cfg.seed == 0
    assert cfg.chains == 1
    assert cfg.burn_in == 0.2
    assert cfg.max_lag == 3000
    assert cfg.debug is False
    assert cfg.sampler_options() == {}


def test_unknown_field_rejected():
    with pytest.raises(ConfigError, match="unknown config fields"):
        ExperimentConfig.from_dict({**MINIMAL, "temperture": 2.0})


@pytest.mark.parametrize("missing", ["model", "sampler", "total_time", "thinning"])
def test_missing_field_rejected(missing):
    data = {k: v for k, v in MINIMAL.items() if k != missing}
    with pytest.raises(ConfigError, match="missing config fields"):
        ExperimentConfig.from_dict(data)


@pytest.mark.parametrize(
    "patch",
    [
        {"sampler": "gibbs"},
        {"balancing": "cubic"},
        {"model": "spin"},
        {"model": {"n": 4}},
        {"total_time": 0},
        {"total_time": 2.5},
        {"total_time": True},
        {"thinning": -1},
        {"total_time": 10, "thinning": 3},
        {"seed": "seven"},
        {"chains": 0},
        {"burn_in": 1.0},
        {"max_lag": 0},
    ],
)
def test_invalid_values_rejected(patch):
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict({**MINIMAL, **patch})


def test_psi_only_for_dcs():
    cfg = ExperimentConfig.from_dict({**MINIMAL, "psi": [0.5, 0.5]})
    with pytest.raises(ConfigError, match="psi"):
        cfg.sampler_options()
    cfg = ExperimentConfig.from_dict({**MINIMAL, "sampler": "dcs", "psi": [0.5, 0.5]})
    assert cfg.sampler_options() == {"psi": [0.5, 0.5]}


def test_weights_only_for_dzz():
    cfg = ExperimentConfig.from_dict({**MINIMAL, "weights": [1.0, 1.0]})
    with pytest.raises(ConfigError, match="weights"):
        cfg.sampler_options()
    cfg = ExperimentConfig.from_dict({**MINIMAL, "sampler": "dzz", "weights": [2.0, 1.0]})
    assert cfg.sampler_options() == {"weights": [2.0, 1.0]}


def test_from_file_round_trip(tmp_path):
    path = write_config(tmp_path, {**MINIMAL, "seed": 11, "label": "demo"})
    cfg = ExperimentConfig.from_file(path)
    assert cfg.seed == 11
    assert cfg.run_label() == "demo"


def test_from_file_missing(tmp_path):
    with pytest.raises(ConfigError, match="does not exist"):
        ExperimentConfig.from_file(tmp_path / "nope.json")


def test_from_file_bad_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(ConfigError, match="not valid JSON"):
        ExperimentConfig.from_file(path)


def test_default_run_label():
    cfg = ExperimentConfig.from_dict(MINIMAL)
    assert cfg.run_label() == "tabular_zanella_barker"


def test_apply_overrides():
    out = apply_overrides(
        MINIMAL,
        ["sampler=dzz", "model.probs=[0.1, 0.1, 0.8]", "seed=5", "label=alpha"],
    )
    assert out["sampler"] == "dzz"
    assert out["model"]["probs"] == [0.1, 0.1, 0.8]
    assert out["seed"] == 5
    assert out["label"] == "alpha"
    # The source dictionary is untouched.
    assert MINIMAL["sampler"] == "zanella"


def test_apply_overrides_bad_shape():
    with pytest.raises(ConfigError, match="path=value"):
        apply_overrides(MINIMAL, ["sampler"])


# ---------------------------------------------------------------------------
# command line


def test_run_writes_artifacts(tmp_path, path3):
    cfg = write_config(tmp_path, {**MINIMAL, "seed": 4})
    out = tmp_path / "out"
    code = cli.main(["run", cfg, "--output", str(out)])
    assert code == 0
    chain = out / "chain_00"
    for name in ("trace.csv", "samples.csv", "stats.json"):
        assert (chain / name).exists()
    summary = json.loads((out / "summary.json").read_text())
    assert summary["config"]["sampler"] == "zanella"
    assert summary["total_events"] > 0

    trace = read_trace_csv(chain / "trace.csv")
    assert trace.sampler_kind == "zanella"
    times, rows, header = read_samples_csv(chain / "samples.csv")
    assert len(times) == 20 // 2 + 1
    assert header[1:] == path3.state_header()
    stats = read_stats_json(chain / "stats.json")
    assert stats["n_events"] == trace.n_events


def test_run_is_deterministic(tmp_path):
    cfg = write_config(tmp_path, {**MINIMAL, "seed": 9, "chains": 2})
    out_a, out_b = tmp_path / "a", tmp_path / "b"
    assert cli.main(["run", cfg, "--output", str(out_a)]) == 0
    assert cli.main(["run", cfg, "--output", str(out_b)]) == 0
    for chain in ("chain_00", "chain_01"):
        same = (out_a / chain / "trace.csv").read_text()
        assert same == (out_b / chain / "trace.csv").read_text()
    # Chains use distinct streams.
    assert (out_a / "chain_00" / "trace.csv").read_text() != (
        out_a / "chain_01" / "trace.csv"
    ).read_text()


def test_run_with_override(tmp_path):
    cfg = write_config(tmp_path, MINIMAL)
    out = tmp_path / "out"
    code = cli.main(["run", cfg, "--output", str(out), "--set", "sampler=dcs"])
    assert code == 0
    trace = read_trace_csv(out / "chain_00" / "trace.csv")
    assert trace.sampler_kind == "dcs"


def test_verify_passes(tmp_path, capsys):
    cfg = write_config(tmp_path, MINIMAL)
    report = tmp_path / "report.csv"
    code = cli.main(["verify", cfg, "--output", str(report)])
    assert code == 0
    out = capsys.readouterr().out
    assert "[pass]" in out
    assert "[FAIL]" not in out
    assert report.exists()


def test_verify_negative_control_fails(tmp_path, capsys):
    cfg = write_config(tmp_path, SPIN_TABU)
    assert cli.main(["verify", cfg]) == 0
    assert cli.main(["verify", cfg, "--without-compensators"]) == 1
    assert "[FAIL]" in capsys.readouterr().out


def test_verify_size_cap_is_config_error(tmp_path, capsys):
    cfg = write_config(tmp_path, SPIN_TABU)
    assert cli.main(["verify", cfg, "--size-cap", "10"]) == 2
    assert "config error" in capsys.readouterr().err


def test_missing_config_exits_2(tmp_path, capsys):
    assert cli.main(["run", str(tmp_path / "absent.json")]) == 2
    assert "config error" in capsys.readouterr().err


def test_invalid_json_exits_2(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("[1, 2")
    assert cli.main(["verify", str(path)]) == 2
    assert "config error" in capsys.readouterr().err


def test_invalid_combination_exits_2(tmp_path, capsys):
    # The tabu walk needs self-inverse moves; the three-state path has none.
    cfg = write_config(tmp_path, {**MINIMAL, "sampler": "tabu"})
    assert cli.main(["verify", cfg]) == 2
    assert "config error" in capsys.readouterr().err


def test_compare_needs_two_configs(tmp_path, capsys):
    cfg = write_config(tmp_path, MINIMAL)
    assert cli.main(["compare", cfg]) == 2
    assert "at least two" in capsys.readouterr().err


def test_compare_rejects_mismatched_models(tmp_path, capsys):
    a = write_config(tmp_path, MINIMAL, "a.json")
    b = write_config(
        tmp_path,
        {**MINIMAL, "model": {"kind": "tabular", "probs": [0.5, 0.3, 0.2]}},
        "b.json",
    )
    assert cli.main(["compare", a, b]) == 2
    assert "identical model" in capsys.readouterr().err


def test_compare_tabulates(tmp_path, capsys):
    a = write_config(tmp_path, {**MINIMAL, "label": "flat"}, "a.json")
    b = write_config(
        tmp_path, {**MINIMAL, "sampler": "dzz", "label": "zigzag"}, "b.json"
    )
    code = cli.main(["compare", a, b, "--repeats", "2"])
    assert code == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0].startswith("label")
    assert "ess/s" in out[0]
    labels = [line.split()[0] for line in out[1:3]]
    assert labels == ["flat", "zigzag"]


def test_module_entry_point(tmp_path):
    cfg = write_config(tmp_path, MINIMAL)
    proc = subprocess.run(
        [sys.executable, "-m", "jumpmc", "verify", cfg],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "[pass]" in proc.stdout
