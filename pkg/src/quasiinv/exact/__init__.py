"""Exact arithmetic: scalars, sparse polynomials, localized coefficients, linear algebra."""
from .scalars import QQ, FieldElement, NumberField, dihedral_field, scalar_str
from .poly import (MultiPoly, NEG_INF, adapted_frame, divide_by_linear_power,
                   linear_substitute, monomials_of_degree, parse_poly)
from .linalg import exact_kernel, rref, rank, inverse, det
from .univariate import UPoly, RationalFunction
from .localized import DenominatorForms, LocalizedPoly

__all__ = [
    "QQ", "FieldElement", "NumberField", "dihedral_field", "scalar_str",
    "MultiPoly", "NEG_INF", "adapted_frame", "divide_by_linear_power",
    "linear_substitute", "monomials_of_degree", "parse_poly",
    "exact_kernel", "rref", "rank", "inverse", "det",
    "UPoly", "RationalFunction", "DenominatorForms", "LocalizedPoly",
]
