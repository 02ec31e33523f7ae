"""
Benchmark system generators.

Lorenz attractor, the odd-subspace Kuramoto-Sivashinsky Galerkin modes,
a network of coupled logistic maps and the static double-well
regression problem.
"""

import time
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from sysid.basis.schemas import Monomial
from sysid.basis.service import exponent_matrix
from sysid.config import settings
from sysid.core.errors import ConfigError
from sysid.dynamics.integrators import integrate_rk4, iterate_map
from sysid.dynamics.schemas import TimeSeriesSet
from sysid.observability.metrics import SIMULATIONS_TOTAL
from sysid.utils.logger import get_logger

logger = get_logger(__name__)


def _check_grid(dt: float, steps: int) -> None:
    if dt <= 0:
        raise ConfigError(f"dt must be positive, got {dt}")
    if steps < 2:
        raise ConfigError(f"steps must be >= 2, got {steps}")


# ---------------- LORENZ ---------------- #


def lorenz_rhs(z: np.ndarray, sigma: float, rho: float, beta: float) -> np.ndarray:
    """Lorenz vector field; accepts a single state or an ℓ×3 array."""
    z = np.asarray(z, dtype=np.float64)
    x, y, w = z[..., 0], z[..., 1], z[..., 2]
    return np.stack(
        [sigma * (y - x), x * (rho - w) - y, x * y - beta * w],
        axis=-1,
    )


def simulate_lorenz(
    sigma: float,
    rho: float,
    beta: float,
    z0: Sequence[float],
    dt: float,
    steps: int,
    *,
    burn_in: Optional[int] = None,
) -> TimeSeriesSet:
    """
    Integrate the Lorenz system with fixed-step RK4.

    Args:
        sigma, rho, beta (float): Lorenz parameters.
        z0 (Sequence[float]): Initial state (before burn-in).
        dt (float): Step size.
        steps (int): Number of returned samples (>= 2).
        burn_in (Optional[int]): Discarded steps; ``settings.LORENZ_BURN_IN`` when None.

    Returns:
        TimeSeriesSet: steps×3 trajectory.
    """
    _check_grid(dt, steps)
    z0 = np.asarray(z0, dtype=np.float64)
    if z0.shape != (3,):
        raise ConfigError(f"Lorenz initial state must have 3 entries, got {z0.shape}")
    burn_in = settings.LORENZ_BURN_IN if burn_in is None else burn_in

    start = time.time()
    states = integrate_rk4(
        lambda z: lorenz_rhs(z, sigma, rho, beta),
        z0,
        dt,
        steps,
        burn_in=burn_in,
        system="lorenz",
    )
    SIMULATIONS_TOTAL.labels(system="lorenz").inc()
    logger.info(
        "Lorenz trajectory simulated",
        extra={"steps": steps, "burn_in": burn_in, "seconds": round(time.time() - start, 3)},
    )
    return TimeSeriesSet.from_states(states, dt)


# ---------------- KURAMOTO-SIVASHINSKY MODES ---------------- #


def kse_linear_rates(nu: float, n_modes: int) -> np.ndarray:
    """Growth rates k^2 - nu k^4 for k = 1..n_modes."""
    k = np.arange(1, n_modes + 1, dtype=np.float64)
    return k**2 - nu * k**4


def _kse_rhs_1d(a: np.ndarray, nu: float) -> np.ndarray:
    n = a.size
    # Odd extension b_{-m} = -b_m, b_0 = 0, laid out for m = -n..n.
    b = np.concatenate([-a[::-1], [0.0], a])
    conv = np.convolve(b, b)
    k = np.arange(1, n + 1, dtype=np.float64)
    return kse_linear_rates(nu, n) * a - k * conv[2 * n + 1 : 3 * n + 1]


def kse_rhs(a: np.ndarray, nu: float) -> np.ndarray:
    """
    Galerkin mode equations in the odd subspace.

    da_k/dt = (k^2 - nu k^4) a_k - k * sum_m a_m a_{k-m}, with m and k - m
    restricted to [-N, N], a_{-m} = -a_m and a_0 = 0.
    """
    a = np.asarray(a, dtype=np.float64)
    if a.ndim == 1:
        return _kse_rhs_1d(a, nu)
    return np.apply_along_axis(_kse_rhs_1d, -1, a, nu)


def simulate_kse_modes(
    nu: float,
    n_modes: int,
    a0: Sequence[float],
    dt: float,
    steps: int,
    *,
    burn_in: Optional[int] = None,
) -> TimeSeriesSet:
    """Integrate the truncated KSE mode ODE with RK4."""
    if n_modes < 1:
        raise ConfigError(f"n_modes must be >= 1, got {n_modes}")
    _check_grid(dt, steps)
    a0 = np.asarray(a0, dtype=np.float64)
    if a0.shape != (n_modes,):
        raise ConfigError(f"a0 must have {n_modes} entries, got {a0.shape}")
    burn_in = settings.KSE_BURN_IN if burn_in is None else burn_in

    start = time.time()
    states = integrate_rk4(
        lambda a: _kse_rhs_1d(a, nu),
        a0,
        dt,
        steps,
        burn_in=burn_in,
        system="kse",
    )
    SIMULATIONS_TOTAL.labels(system="kse").inc()
    logger.info(
        "KSE modes simulated",
        extra={"modes": n_modes, "steps": steps, "seconds": round(time.time() - start, 3)},
    )
    return TimeSeriesSet.from_states(states, dt)


# ---------------- COUPLED LOGISTIC MAPS ---------------- #


def random_regular_adjacency(
    n_nodes: int,
    min_degree: int = 2,
    max_degree: int = 4,
    seed: int = 0,
) -> np.ndarray:
    """
    Random directed 0/1 adjacency without self loops.

    Row i lists the nodes feeding node i; its degree is drawn uniformly
    from [min_degree, max_degree].
    """
    if not 1 <= min_degree <= max_degree < n_nodes:
        raise ConfigError(
            f"Need 1 <= min_degree <= max_degree < n_nodes, "
            f"got {min_degree}, {max_degree}, {n_nodes}"
        )
    rng = np.random.default_rng(seed)
    adjacency = np.zeros((n_nodes, n_nodes), dtype=np.int64)
    for i in range(n_nodes):
        degree = int(rng.integers(min_degree, max_degree + 1))
        others = np.delete(np.arange(n_nodes), i)
        adjacency[i, rng.choice(others, size=degree, replace=False)] = 1
    return adjacency


def validate_adjacency(adjacency: np.ndarray, n_nodes: int) -> np.ndarray:
    adjacency = np.asarray(adjacency)
    if adjacency.shape != (n_nodes, n_nodes):
        raise ConfigError(f"adjacency must be {n_nodes}×{n_nodes}, got {adjacency.shape}")
    if not np.all((adjacency == 0) | (adjacency == 1)):
        raise ConfigError("adjacency must be a 0/1 matrix")
    degrees = adjacency.sum(axis=1)
    if np.any(degrees <= 1) or np.any(degrees > 4):
        raise ConfigError("every row degree must satisfy 1 < D_ii <= 4")
    return adjacency.astype(np.float64)


def logistic_network_map(
    x: np.ndarray, a: float, k: float, adjacency: np.ndarray
) -> np.ndarray:
    """F(x_i) = f(x_i) + k sum_j A_ij (f(x_j) - f(x_i)), f(x) = a x (1 - x)."""
    fx = a * x * (1.0 - x)
    return fx + k * (adjacency @ fx - adjacency.sum(axis=1) * fx)


def simulate_logistic_network(
    n_nodes: int,
    a: float,
    k: float,
    adjacency: np.ndarray,
    x0: Sequence[float],
    steps: int,
    *,
    burn_in: int = 0,
    bound: Optional[float] = None,
) -> TimeSeriesSet:
    """
    Iterate the coupled logistic-map network.

    The map is discrete, so the returned series has dt = 1.
    """
    if steps < 2:
        raise ConfigError(f"steps must be >= 2, got {steps}")
    weights = validate_adjacency(adjacency, n_nodes)
    x0 = np.asarray(x0, dtype=np.float64)
    if x0.shape != (n_nodes,):
        raise ConfigError(f"x0 must have {n_nodes} entries, got {x0.shape}")
    if np.any((x0 <= 0.0) | (x0 >= 1.0)):
        raise ConfigError("initial node states must lie in (0, 1)")

    states = iterate_map(
        lambda x: logistic_network_map(x, a, k, weights),
        x0,
        steps,
        burn_in=burn_in,
        bound=bound,
        system="logistic_net",
    )
    SIMULATIONS_TOTAL.labels(system="logistic_net").inc()
    logger.info("Logistic network iterated", extra={"nodes": n_nodes, "steps": steps})
    return TimeSeriesSet.from_states(states, 1.0)


# ---------------- DOUBLE WELL ---------------- #


def double_well_dataset(
    n_samples: int = 61,
    x_range: Tuple[float, float] = (-1.2, 1.2),
    outliers: Optional[Dict[float, float]] = None,
) -> Tuple[TimeSeriesSet, np.ndarray]:
    """
    Static regression data for f(x) = x^4 - x^2 on a uniform grid.

    Each outlier entry replaces the target at the grid point nearest to
    its key. The grid doubles as the time axis.

    Returns:
        Tuple[TimeSeriesSet, np.ndarray]: the x samples and the targets.
    """
    if n_samples < 2:
        raise ConfigError(f"n_samples must be >= 2, got {n_samples}")
    x = np.linspace(x_range[0], x_range[1], n_samples)
    targets = np.power(x, 4) - np.power(x, 2)
    for where, value in (outliers if outliers is not None else {0.52: 0.5}).items():
        targets[int(np.argmin(np.abs(x - where)))] = value

    dt = (x_range[1] - x_range[0]) / (n_samples - 1)
    series = TimeSeriesSet(times=x, states=x[:, None], dt=dt)
    return series, targets


# ---------------- RECOVERED MODELS ---------------- #


def simulate_polynomial_model(
    coefficients: np.ndarray,
    columns: Sequence[Monomial],
    z0: Sequence[float],
    dt: float,
    steps: int,
    *,
    discrete: bool = False,
    bound: Optional[float] = None,
) -> TimeSeriesSet:
    """
    Run an identified polynomial model forward from z0.

    Continuous models dz/dt = Phi(z) A are integrated with RK4; discrete
    ones are iterated as z_{t+1} = Phi(z_t) A.
    """
    _check_grid(dt, steps)
    coefficients = np.asarray(coefficients, dtype=np.float64)
    exponents = exponent_matrix(columns)
    if coefficients.shape[0] != exponents.shape[0]:
        raise ConfigError("coefficient rows must match the monomial list")

    def model(z: np.ndarray) -> np.ndarray:
        terms = np.prod(np.power(z[None, :], exponents), axis=1)
        return terms @ coefficients

    if discrete:
        states = iterate_map(model, z0, steps, bound=bound, system="recovered_map")
    else:
        states = integrate_rk4(model, z0, dt, steps, bound=bound, system="recovered_ode")
    return TimeSeriesSet.from_states(states, dt)
