"""
Pytest configuration and fixtures.
"""

import os

# Settings, metrics and MLflow read these at import time, before any fixture runs.
os.environ["SYSID_ENV"] = "test"
os.environ.setdefault("SYSID_LOG_LEVEL", "WARNING")

import numpy as np
import pytest


@pytest.fixture(scope="session", autouse=True)
def setup_test_environment():
    """Setup test environment variables."""

    test_env = {
        "SYSID_ENV": "test",
        "SYSID_LOG_LEVEL": "WARNING",
        "SYSID_MLFLOW_TRACKING_URI": "",
    }

    previous = {key: os.environ.get(key) for key in test_env}
    for key, value in test_env.items():
        os.environ[key] = value

    yield

    # Cleanup
    for key, value in previous.items():
        if value is None:
            os.environ.pop(key, None)
        else:
            os.environ[key] = value


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def double_well_problem():
    """Degree-10 double-well regression with the single outlier f(0.52) = 0.5."""
    from sysid.basis.service import build_basis_matrix
    from sysid.dynamics.systems import double_well_dataset

    series, targets = double_well_dataset()
    return build_basis_matrix(series, 10), targets


@pytest.fixture
def lorenz_problem():
    """Noise-free Lorenz samples with exact vector-field targets, degree-2 basis."""
    from sysid.basis.service import build_basis_matrix
    from sysid.dynamics.systems import lorenz_rhs, simulate_lorenz

    series = simulate_lorenz(10.0, 28.0, 8.0 / 3.0, [1.0, 1.0, 1.0], 0.01, 400, burn_in=500)
    targets = lorenz_rhs(series.states, 10.0, 28.0, 8.0 / 3.0)
    return build_basis_matrix(series, 2), targets
