from sysid.dynamics.derivatives import estimate_derivatives
from sysid.dynamics.ground_truth import (
    double_well_ground_truth,
    kse_ground_truth,
    logistic_ground_truth,
    lorenz_ground_truth,
)
from sysid.dynamics.io import read_binary, read_csv, write_binary, write_csv
from sysid.dynamics.noise import inject_noise
from sysid.dynamics.schemas import GroundTruth, NoiseModel, TimeSeriesSet
from sysid.dynamics.systems import (
    double_well_dataset,
    kse_rhs,
    logistic_network_map,
    lorenz_rhs,
    random_regular_adjacency,
    simulate_kse_modes,
    simulate_logistic_network,
    simulate_lorenz,
    simulate_polynomial_model,
)

__all__ = [
    "GroundTruth",
    "NoiseModel",
    "TimeSeriesSet",
    "double_well_dataset",
    "double_well_ground_truth",
    "estimate_derivatives",
    "inject_noise",
    "kse_ground_truth",
    "kse_rhs",
    "logistic_ground_truth",
    "logistic_network_map",
    "lorenz_ground_truth",
    "lorenz_rhs",
    "random_regular_adjacency",
    "read_binary",
    "read_csv",
    "simulate_kse_modes",
    "simulate_logistic_network",
    "simulate_lorenz",
    "simulate_polynomial_model",
    "write_binary",
    "write_csv",
]
