from sysid.basis.schemas import BasisMatrix, Monomial
from sysid.basis.service import (
    as_matrix,
    build_basis_matrix,
    enumerate_monomials,
    evaluate_columns,
)

__all__ = [
    "BasisMatrix",
    "Monomial",
    "as_matrix",
    "build_basis_matrix",
    "enumerate_monomials",
    "evaluate_columns",
]
