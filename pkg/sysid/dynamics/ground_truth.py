"""
Ground-truth coefficient tables of the benchmark systems, expressed in
the graded-lexicographic polynomial basis.
"""

from typing import List

import numpy as np

from sysid.basis.schemas import Monomial
from sysid.basis.service import enumerate_monomials
from sysid.core.errors import ConfigError
from sysid.dynamics.schemas import GroundTruth
from sysid.dynamics.systems import kse_linear_rates, validate_adjacency


def _positions(columns: List[Monomial]):
    lookup = {m.exponents: k for k, m in enumerate(columns)}
    n = columns[0].state_dim

    def position(*variables: int) -> int:
        exponents = [0] * n
        for i in variables:
            exponents[i] += 1
        return lookup[tuple(exponents)]

    return position


def lorenz_ground_truth(sigma: float, rho: float, beta: float, max_degree: int) -> GroundTruth:
    """
    Lorenz coefficients: seven nonzeros for generic parameters.

    dz1 = sigma (z2 - z1); dz2 = rho z1 - z2 - z1 z3; dz3 = z1 z2 - beta z3.
    Zero parameters simply drop their term from the support.
    """
    if max_degree < 2:
        raise ConfigError("The Lorenz system needs a basis of degree >= 2")
    columns = enumerate_monomials(3, max_degree)
    at = _positions(columns)

    coefficients = np.zeros((len(columns), 3))
    coefficients[at(0), 0] = -sigma
    coefficients[at(1), 0] = sigma
    coefficients[at(0), 1] = rho
    coefficients[at(1), 1] = -1.0
    coefficients[at(0, 2), 1] = -1.0
    coefficients[at(2), 2] = -beta
    coefficients[at(0, 1), 2] = 1.0

    return GroundTruth(coefficients=coefficients, columns=columns, max_degree=max_degree)


def kse_ground_truth(nu: float, n_modes: int, max_degree: int = 2) -> GroundTruth:
    """
    Coefficients of the truncated KSE mode equations.

    The quadratic sum runs over ordered pairs (m, k - m) inside [-N, N];
    negative indices fold back onto positive modes with a sign flip, so
    each unordered product a_i a_j collects its multiplicity here.
    """
    if n_modes < 1:
        raise ConfigError(f"n_modes must be >= 1, got {n_modes}")
    if max_degree < 2:
        raise ConfigError("The KSE mode equations need a basis of degree >= 2")
    columns = enumerate_monomials(n_modes, max_degree)
    at = _positions(columns)

    coefficients = np.zeros((len(columns), n_modes))
    rates = kse_linear_rates(nu, n_modes)
    for k in range(1, n_modes + 1):
        coefficients[at(k - 1), k - 1] = rates[k - 1]
        for m in range(-n_modes, n_modes + 1):
            rest = k - m
            if m == 0 or rest == 0 or abs(rest) > n_modes:
                continue
            sign = np.sign(m) * np.sign(rest)
            coefficients[at(abs(m) - 1, abs(rest) - 1), k - 1] -= k * sign

    return GroundTruth(coefficients=coefficients, columns=columns, max_degree=max_degree)


def logistic_ground_truth(
    a: float, k: float, adjacency: np.ndarray, max_degree: int = 2
) -> GroundTruth:
    """
    Coefficients of the coupled logistic network written as a polynomial map.

    F_i = a (1 - k D_ii)(x_i - x_i^2) + k a sum_j A_ij (x_j - x_j^2).
    """
    if max_degree < 2:
        raise ConfigError("The logistic network needs a basis of degree >= 2")
    adjacency = np.asarray(adjacency)
    n = adjacency.shape[0]
    weights = validate_adjacency(adjacency, n)
    degrees = weights.sum(axis=1)

    columns = enumerate_monomials(n, max_degree)
    at = _positions(columns)

    coefficients = np.zeros((len(columns), n))
    for i in range(n):
        self_weight = a * (1.0 - k * degrees[i])
        coefficients[at(i), i] = self_weight
        coefficients[at(i, i), i] = -self_weight
        for j in np.flatnonzero(weights[i]):
            coefficients[at(j), i] += k * a
            coefficients[at(j, j), i] -= k * a

    return GroundTruth(coefficients=coefficients, columns=columns, max_degree=max_degree)


def double_well_ground_truth(max_degree: int) -> GroundTruth:
    """f(x) = x^4 - x^2 in the single-variable basis."""
    if max_degree < 4:
        raise ConfigError("The double well needs a basis of degree >= 4")
    columns = enumerate_monomials(1, max_degree)
    coefficients = np.zeros((len(columns), 1))
    coefficients[2, 0] = -1.0
    coefficients[4, 0] = 1.0
    return GroundTruth(coefficients=coefficients, columns=columns, max_degree=max_degree)
