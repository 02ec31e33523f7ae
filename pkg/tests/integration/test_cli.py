import json
from unittest.mock import patch

import numpy as np
import pandas as pd
import pytest

from sysid.main import EXIT_CONFIG, EXIT_OK, EXIT_RUNTIME, main


def _write_config(tmp_path, **overrides):
    config = {
        "system": "double_well",
        "basis_degree": 10,
        "n_samples": 61,
        "solvers": [{"name": "ls"}, {"name": "sindy", "params": {"lambda": 0.5}}],
        "n_runs": 2,
        "seed": 1,
    }
    config.update(overrides)
    path = tmp_path / "experiment.json"
    path.write_text(json.dumps(config))
    return str(path)


def test_bench_json(tmp_path):
    out = tmp_path / "out"
    assert main(["bench", "--config", _write_config(tmp_path), "--out-dir", str(out)]) == EXIT_OK
    report = json.loads((out / "report.json").read_text())
    assert len(report["runs"]) == 4
    assert {a["solver"] for a in report["aggregates"]} == {"ls", "sindy"}


def test_bench_csv(tmp_path):
    out = tmp_path / "out"
    code = main(["bench", "--config", _write_config(tmp_path), "--out-dir", str(out), "--format", "csv"])
    assert code == EXIT_OK
    assert {p.name for p in out.iterdir()} >= {"runs.csv", "aggregates.csv", "config.json"}


def test_bench_seed_override_changes_run_seeds(tmp_path):
    config = _write_config(tmp_path)
    main(["bench", "--config", config, "--out-dir", str(tmp_path / "a")])
    main(["bench", "--config", config, "--out-dir", str(tmp_path / "b"), "--seed", "99"])
    a = json.loads((tmp_path / "a" / "report.json").read_text())
    b = json.loads((tmp_path / "b" / "report.json").read_text())
    assert b["config"]["seed"] == 99
    assert a["runs"][0]["run_seed"] != b["runs"][0]["run_seed"]


def test_bench_traces_flag_keeps_er_traces(tmp_path):
    config = _write_config(
        tmp_path,
        solvers=[{"name": "er", "params": {"shuffle": {"n_shuffles": 20}}}],
        n_runs=1,
    )
    out = tmp_path / "out"
    assert main(["bench", "--config", config, "--out-dir", str(out), "--traces"]) == EXIT_OK
    report = json.loads((out / "report.json").read_text())
    (traces,) = [run["traces"] for run in report["runs"]]
    assert traces is not None
    assert len(traces) == 1
    assert "forward_steps" in traces[0]


def test_bench_without_traces_flag_omits_them(tmp_path):
    config = _write_config(
        tmp_path,
        solvers=[{"name": "er", "params": {"shuffle": {"n_shuffles": 20}}}],
        n_runs=1,
    )
    out = tmp_path / "out"
    assert main(["bench", "--config", config, "--out-dir", str(out)]) == EXIT_OK
    report = json.loads((out / "report.json").read_text())
    assert report["runs"][0]["traces"] is None


def test_invalid_config_exit_code(tmp_path):
    config = _write_config(tmp_path, n_runs=0)
    assert main(["bench", "--config", config, "--out-dir", str(tmp_path / "out")]) == EXIT_CONFIG


def test_unknown_solver_parameter_exit_code(tmp_path):
    config = _write_config(tmp_path, solvers=[{"name": "ls", "params": {"lambda": 1.0}}])
    assert main(["bench", "--config", config, "--out-dir", str(tmp_path / "out")]) == EXIT_CONFIG


def test_generate_double_well_writes_inputs_and_targets(tmp_path):
    code = main(["generate", "--config", _write_config(tmp_path), "--out-dir", str(tmp_path)])
    assert code == EXIT_OK
    frame = pd.read_csv(tmp_path / "trajectory.csv", comment="#")
    assert list(frame.columns) == ["t", "z1", "z2"]
    assert len(frame) == 61
    assert frame["z2"].iloc[43] == 0.5


def test_generate_lorenz_npz(tmp_path):
    config = _write_config(
        tmp_path,
        system="lorenz",
        basis_degree=2,
        n_samples=30,
        system_params={"dt": 0.01, "burn_in": 10},
    )
    assert main(["generate", "--config", config, "--out-dir", str(tmp_path), "--format", "npz"]) == EXIT_OK
    assert (tmp_path / "trajectory.npz").exists()


def test_fit_writes_models(tmp_path):
    out = tmp_path / "fit"
    code = main(["fit", "--config", _write_config(tmp_path), "--solver", "ols", "--out-dir", str(out)])
    assert code == EXIT_OK
    fit = json.loads((out / "fit.json").read_text())
    assert list(fit["solvers"]) == ["ols"]
    (model,) = fit["solvers"]["ols"]
    assert len(model["coefficients"]) == 11
    labels = ["1", "z1"] + [f"z1^{p}" for p in range(2, 11)]
    assert model["terms"] == [labels[i] for i in model["support"]]


def test_fit_resimulates_dynamic_models(tmp_path):
    config = _write_config(
        tmp_path,
        system="lorenz",
        basis_degree=2,
        n_samples=200,
        solvers=[{"name": "ls"}],
        system_params={"dt": 0.005, "burn_in": 200},
    )
    out = tmp_path / "fit"
    assert main(["fit", "--config", config, "--out-dir", str(out), "--resimulate"]) == EXIT_OK
    assert (out / "fit.json").exists()


def test_fit_linear_algebra_failure_exit_code(tmp_path):
    with patch("sysid.main.invoke_solver", side_effect=np.linalg.LinAlgError("SVD did not converge")):
        code = main(["fit", "--config", _write_config(tmp_path), "--solver", "ls", "--out-dir", str(tmp_path / "fit")])
    assert code == EXIT_RUNTIME


def test_estimate_mi(tmp_path, rng):
    x = rng.normal(size=300)
    frame = pd.DataFrame({"a": x, "b": x + 0.1 * rng.normal(size=300), "c": rng.normal(size=300)})
    path = tmp_path / "data.csv"
    frame.to_csv(path, index=False)
    assert main(["estimate-mi", "--csv", str(path), "--x", "a", "--y", "b"]) == EXIT_OK
    assert (
        main(["estimate-mi", "--csv", str(path), "--x", "a", "--y", "b", "--z", "c", "--shuffles", "10"])
        == EXIT_OK
    )


def test_estimate_mi_unknown_column(tmp_path):
    path = tmp_path / "data.csv"
    path.write_text("a,b\n1,2\n3,4\n5,6\n")
    assert main(["estimate-mi", "--csv", str(path), "--x", "a", "--y", "nope"]) == EXIT_CONFIG


def test_estimate_mi_missing_file(tmp_path):
    assert main(["estimate-mi", "--csv", str(tmp_path / "none.csv"), "--x", "a", "--y", "b"]) == EXIT_RUNTIME


def test_missing_subcommand():
    with pytest.raises(SystemExit):
        main([])
