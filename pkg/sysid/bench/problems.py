"""
Turning an ExperimentConfig plus a run seed into regression problems.
"""

from typing import Any, Dict, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict

from sysid.basis.schemas import BasisMatrix
from sysid.basis.service import build_basis_matrix
from sysid.bench.schemas import ExperimentConfig
from sysid.core.errors import ConfigError
from sysid.dynamics.derivatives import estimate_derivatives
from sysid.dynamics.ground_truth import (
    double_well_ground_truth,
    kse_ground_truth,
    logistic_ground_truth,
    lorenz_ground_truth,
)
from sysid.dynamics.io import read_csv
from sysid.dynamics.noise import inject_noise, sample_noise
from sysid.dynamics.schemas import GroundTruth, TimeSeriesSet
from sysid.dynamics.systems import (
    double_well_dataset,
    random_regular_adjacency,
    simulate_kse_modes,
    simulate_logistic_network,
    simulate_lorenz,
)

# ---------------- DEFAULT SYSTEM PARAMETERS ---------------- #

LORENZ_DEFAULTS: Dict[str, Any] = {
    "sigma": 10.0,
    "rho": 28.0,
    "beta": 8.0 / 3.0,
    "dt": 0.0005,
    "sample_every": 1,
    "burn_in": None,
    "z0": None,
}

KSE_DEFAULTS: Dict[str, Any] = {
    "nu": 0.029910,
    "n_modes": 16,
    "dt": 0.001,
    "sample_every": 1,
    "burn_in": None,
    "a0": None,
}

LOGISTIC_DEFAULTS: Dict[str, Any] = {
    "n_nodes": 20,
    "a": 3.99,
    "k": 0.1,
    "min_degree": 2,
    "max_degree": 4,
    "adjacency_seed": None,
    "burn_in": 100,
    "x0": None,
}

DOUBLE_WELL_DEFAULTS: Dict[str, Any] = {
    "x_range": [-1.2, 1.2],
    "outliers": {"0.52": 0.5},
}

_DEFAULTS = {
    "lorenz": LORENZ_DEFAULTS,
    "kse": KSE_DEFAULTS,
    "logistic_net": LOGISTIC_DEFAULTS,
    "double_well": DOUBLE_WELL_DEFAULTS,
    "custom_csv": {},
}


class GeneratedData(BaseModel):
    """Raw samples of one run, before derivative estimation."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    clean: TimeSeriesSet
    noisy: TimeSeriesSet
    static_targets: Optional[np.ndarray] = None
    discrete: bool = False
    truth: Optional[GroundTruth] = None


class Problem(BaseModel):
    """Aligned regression problem Φ a_i = f_i for every state dimension i."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    basis: BasisMatrix
    targets: np.ndarray
    aligned: TimeSeriesSet
    truth: Optional[GroundTruth] = None
    discrete: bool = False
    static: bool = False
    n_raw_samples: int

    @property
    def n_rows(self) -> int:
        return self.targets.shape[0]

    @property
    def state_dim(self) -> int:
        return self.targets.shape[1]


def system_params(config: ExperimentConfig) -> Dict[str, Any]:
    defaults = _DEFAULTS[config.system]
    unknown = set(config.system_params) - set(defaults)
    if unknown:
        raise ConfigError(f"Unknown {config.system} parameters: {sorted(unknown)}")
    return {**defaults, **config.system_params}


def _raw_length(config: ExperimentConfig) -> int:
    if config.system == "logistic_net" or config.derivative_scheme == "forward":
        return config.n_samples + 1
    return config.n_samples + 2


def generate_data(config: ExperimentConfig, run_seed: int) -> GeneratedData:
    """Simulate (or load) one run's samples and corrupt them with the noise model."""
    params = system_params(config)
    rng = np.random.default_rng(run_seed)
    noise = config.noise.model_copy(update={"seed": int(rng.integers(2**63 - 1))})
    d = config.basis_degree

    if config.system == "lorenz":
        z0 = params["z0"] if params["z0"] is not None else rng.uniform(-10.0, 10.0, 3)
        stride = int(params["sample_every"])
        clean = simulate_lorenz(
            params["sigma"], params["rho"], params["beta"], z0, params["dt"],
            (_raw_length(config) - 1) * stride + 1, burn_in=params["burn_in"],
        ).every(stride)
        truth = lorenz_ground_truth(params["sigma"], params["rho"], params["beta"], d)
        return GeneratedData(clean=clean, noisy=inject_noise(clean, noise), truth=truth)

    if config.system == "kse":
        n_modes = int(params["n_modes"])
        a0 = params["a0"] if params["a0"] is not None else rng.normal(0.0, 0.1, n_modes)
        stride = int(params["sample_every"])
        clean = simulate_kse_modes(
            params["nu"], n_modes, a0, params["dt"],
            (_raw_length(config) - 1) * stride + 1, burn_in=params["burn_in"],
        ).every(stride)
        truth = kse_ground_truth(params["nu"], n_modes, d)
        return GeneratedData(clean=clean, noisy=inject_noise(clean, noise), truth=truth)

    if config.system == "logistic_net":
        n = int(params["n_nodes"])
        adjacency_seed = params["adjacency_seed"]
        adjacency = random_regular_adjacency(
            n, params["min_degree"], params["max_degree"],
            seed=config.seed if adjacency_seed is None else adjacency_seed,
        )
        x0 = params["x0"] if params["x0"] is not None else rng.uniform(0.1, 0.9, n)
        clean = simulate_logistic_network(
            n, params["a"], params["k"], adjacency, x0, _raw_length(config),
            burn_in=params["burn_in"],
        )
        truth = logistic_ground_truth(params["a"], params["k"], adjacency, d)
        return GeneratedData(
            clean=clean, noisy=inject_noise(clean, noise), discrete=True, truth=truth
        )

    if config.system == "double_well":
        outliers = {float(x): float(v) for x, v in params["outliers"].items()}
        series, targets = double_well_dataset(config.n_samples, tuple(params["x_range"]), outliers)
        noisy_targets = targets
        if not noise.is_silent:
            noisy_targets = targets + sample_noise(targets.shape, noise)
        return GeneratedData(
            clean=series,
            noisy=series,
            static_targets=noisy_targets,
            truth=double_well_ground_truth(d),
        )

    clean = read_csv(config.csv_path)
    return GeneratedData(clean=clean, noisy=inject_noise(clean, noise))


def prepare_problem(config: ExperimentConfig, run_seed: int) -> Problem:
    """
    Build Φ and the per-dimension targets for one run.

    Continuous systems use finite differences of the noisy states, maps
    use next-state targets and the double well regresses its targets
    directly.
    """
    data = generate_data(config, run_seed)

    if data.static_targets is not None:
        aligned = data.noisy
        targets = data.static_targets[:, None]
    else:
        scheme = "map" if data.discrete else config.derivative_scheme
        targets, aligned = estimate_derivatives(data.noisy, scheme)

    basis = build_basis_matrix(aligned, config.basis_degree)
    truth = data.truth
    if truth is not None and truth.coefficients.shape[0] != basis.n_candidates:
        raise ConfigError("Ground truth and basis disagree on the number of candidates")

    return Problem(
        basis=basis,
        targets=targets,
        aligned=aligned,
        truth=truth,
        discrete=data.discrete,
        static=data.static_targets is not None,
        n_raw_samples=data.noisy.n_samples,
    )
