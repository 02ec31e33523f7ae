import json

import pytest

from sysid.bench.config_loader import load_experiment_config
from sysid.bench.schemas import ExperimentConfig
from sysid.core.errors import ConfigError
from sysid.solvers.schemas import SolverId

VALID = {
    "system": "lorenz",
    "system_params": {"dt": 0.001},
    "basis_degree": 3,
    "n_samples": 200,
    "noise": {"eps1": 1e-5, "eps2": 0.2, "p": 0.2},
    "solvers": [{"name": "er"}, {"name": "sindy", "params": {"lambda": 0.05}}],
    "n_runs": 3,
    "seed": 7,
}


def _write(tmp_path, payload):
    path = tmp_path / "experiment.json"
    path.write_text(payload if isinstance(payload, str) else json.dumps(payload))
    return path


def test_valid_file(tmp_path):
    config = load_experiment_config(_write(tmp_path, VALID))
    assert config.system == "lorenz"
    assert config.noise.p == 0.2
    assert [s.name for s in config.solvers] == [SolverId.ER, SolverId.SINDY]
    assert config.seed == 7


def test_seed_override(tmp_path):
    assert load_experiment_config(_write(tmp_path, VALID), seed=42).seed == 42


def test_invalid_json(tmp_path):
    with pytest.raises(ConfigError):
        load_experiment_config(_write(tmp_path, "{not json"))


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        load_experiment_config(tmp_path / "missing.json")


def test_unknown_field(tmp_path):
    with pytest.raises(ConfigError):
        load_experiment_config(_write(tmp_path, {**VALID, "iterations": 5}))


def test_unknown_solver(tmp_path):
    with pytest.raises(ConfigError):
        load_experiment_config(_write(tmp_path, {**VALID, "solvers": [{"name": "magic"}]}))


def test_not_an_object(tmp_path):
    with pytest.raises(ConfigError):
        load_experiment_config(_write(tmp_path, [1, 2, 3]))


def test_custom_csv_needs_path():
    with pytest.raises(ValueError):
        ExperimentConfig(system="custom_csv", basis_degree=2, n_samples=10, solvers=[{"name": "ls"}])
