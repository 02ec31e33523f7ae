"""
Polynomial basis enumeration and evaluation.
"""

from itertools import combinations_with_replacement
from typing import List, Sequence, Union

import numpy as np

from sysid.basis.schemas import BasisMatrix, Monomial, monomial_column
from sysid.core.errors import ConfigError, DataError
from sysid.utils.logger import get_logger

logger = get_logger(__name__)

PhiLike = Union[BasisMatrix, np.ndarray]


def enumerate_monomials(state_dim: int, max_degree: int) -> List[Monomial]:
    """
    List every monomial of total degree <= max_degree in graded
    lexicographic order.

    Within one degree the order follows sorted variable-index tuples, so
    for two variables the list is ``1, z1, z2, z1^2, z1 z2, z2^2``.

    Args:
        state_dim (int): Number of state variables N (>= 1).
        max_degree (int): Highest total degree d (>= 0).

    Returns:
        List[Monomial]: binomial(N + d, d) monomials, constant first.
    """
    if state_dim < 1:
        raise ConfigError(f"state_dim must be >= 1, got {state_dim}")
    if max_degree < 0:
        raise ConfigError(f"max_degree must be >= 0, got {max_degree}")

    monomials: List[Monomial] = []
    for degree in range(max_degree + 1):
        for variables in combinations_with_replacement(range(state_dim), degree):
            exponents = [0] * state_dim
            for i in variables:
                exponents[i] += 1
            monomials.append(Monomial(exponents=tuple(exponents)))
    return monomials


def build_basis_matrix(
    series,
    max_degree: int,
    *,
    scale_columns: bool = False,
) -> BasisMatrix:
    """
    Evaluate the full polynomial basis of degree <= max_degree on a series.

    Args:
        series: TimeSeriesSet (or a raw ℓ×N state array).
        max_degree (int): Polynomial order d.
        scale_columns (bool): Divide each column by its max-abs value.
            Off by default; the unscaled values are what the solvers see.

    Returns:
        BasisMatrix: ℓ×binomial(N+d, d) evaluated candidates.
    """
    states = getattr(series, "states", series)
    states = np.asarray(states, dtype=np.float64)
    if states.ndim != 2 or states.shape[0] == 0:
        raise DataError("Cannot build a basis matrix from an empty series")

    columns = enumerate_monomials(states.shape[1], max_degree)
    values = evaluate_columns(columns, states)

    scales = None
    if scale_columns:
        scales = np.abs(values).max(axis=0)
        scales[scales == 0.0] = 1.0
        values = values / scales

    logger.debug(
        "Basis matrix built",
        extra={"rows": values.shape[0], "columns": values.shape[1], "degree": max_degree},
    )

    return BasisMatrix(
        columns=columns,
        values=values,
        state_dim=states.shape[1],
        max_degree=max_degree,
        scales=scales,
    )


def evaluate_columns(columns: Sequence[Monomial], states: np.ndarray) -> np.ndarray:
    """Evaluate monomials column by column on an ℓ×N state array."""
    states = np.atleast_2d(np.asarray(states, dtype=np.float64))
    values = np.empty((states.shape[0], len(columns)), dtype=np.float64)
    for k, monomial in enumerate(columns):
        values[:, k] = monomial_column(states, monomial.exponents)
    return values


def exponent_matrix(columns: Sequence[Monomial]) -> np.ndarray:
    """K×N integer matrix of exponents, one row per monomial."""
    return np.array([m.exponents for m in columns], dtype=np.int64)


def as_matrix(phi: PhiLike) -> np.ndarray:
    """Raw ℓ×K float array behind a BasisMatrix or array-like."""
    values = phi.values if isinstance(phi, BasisMatrix) else np.asarray(phi, dtype=np.float64)
    if values.ndim != 2:
        raise DataError(f"Basis matrix must be 2-D, got shape {values.shape}")
    return values
