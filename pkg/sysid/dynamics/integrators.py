"""
Fixed-step integrators with divergence guards.
"""

from typing import Callable, Optional

import numpy as np

from sysid.config import settings
from sysid.core.errors import SimulationDivergedError

VectorField = Callable[[np.ndarray], np.ndarray]


def rk4_step(rhs: VectorField, state: np.ndarray, dt: float) -> np.ndarray:
    """One classical fourth-order Runge-Kutta step."""
    k1 = rhs(state)
    k2 = rhs(state + 0.5 * dt * k1)
    k3 = rhs(state + 0.5 * dt * k2)
    k4 = rhs(state + dt * k3)
    return state + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _guard(state: np.ndarray, step: int, bound: float, system: str) -> None:
    if not np.all(np.isfinite(state)) or np.max(np.abs(state)) > bound:
        raise SimulationDivergedError(
            f"{system} left the state bound {bound:g} at step {step}",
            step=step,
            system=system,
        )


def integrate_rk4(
    rhs: VectorField,
    z0: np.ndarray,
    dt: float,
    steps: int,
    *,
    burn_in: int = 0,
    bound: Optional[float] = None,
    system: str = "ode",
) -> np.ndarray:
    """
    Integrate an autonomous ODE with RK4 and return the sampled states.

    The first ``burn_in`` steps are discarded; row 0 of the result is the
    state reached after them.

    Returns:
        np.ndarray: steps×N trajectory.
    """
    bound = settings.STATE_BOUND if bound is None else bound
    state = np.array(z0, dtype=np.float64)
    out = np.empty((steps, state.size), dtype=np.float64)

    with np.errstate(over="ignore", invalid="ignore"):
        for i in range(burn_in):
            state = rk4_step(rhs, state, dt)
            _guard(state, i + 1, bound, system)

        out[0] = state
        for i in range(1, steps):
            state = rk4_step(rhs, state, dt)
            _guard(state, burn_in + i, bound, system)
            out[i] = state

    return out


def iterate_map(
    fmap: VectorField,
    x0: np.ndarray,
    steps: int,
    *,
    burn_in: int = 0,
    bound: Optional[float] = None,
    system: str = "map",
) -> np.ndarray:
    """Iterate a discrete-time map; same layout and guards as integrate_rk4."""
    bound = settings.STATE_BOUND if bound is None else bound
    state = np.array(x0, dtype=np.float64)
    out = np.empty((steps, state.size), dtype=np.float64)

    with np.errstate(over="ignore", invalid="ignore"):
        for i in range(burn_in):
            state = fmap(state)
            _guard(state, i + 1, bound, system)

        out[0] = state
        for i in range(1, steps):
            state = fmap(state)
            _guard(state, burn_in + i, bound, system)
            out[i] = state

    return out
