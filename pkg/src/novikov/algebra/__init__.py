"""Exact arithmetic substrate: fields, polynomials, matrices, root isolation."""

from .algebraic import AlgebraicElement, RealAlgebraicField
from .fields import QQ, CyclotomicElement, CyclotomicField, common_field, embed, field_from_name
from .laurent import LaurentPoly
from .matrix import (Matrix, bareiss, determinant, gaussian_rank, inverse, kron,
                     rank_fraction_free)
from .sturm import IsolatedRoot, count_roots, sturm_isolate_positive_roots, sturm_sequence
from .unipoly import NotDivisible, UniPoly, divide_exact, poly_gcd, squarefree_part, xgcd

__all__ = [
    "AlgebraicElement", "RealAlgebraicField", "QQ", "CyclotomicElement", "CyclotomicField",
    "common_field", "embed", "field_from_name", "LaurentPoly", "Matrix", "bareiss",
    "determinant", "gaussian_rank", "inverse", "kron", "rank_fraction_free", "IsolatedRoot",
    "count_roots", "sturm_isolate_positive_roots", "sturm_sequence", "NotDivisible", "UniPoly",
    "divide_exact", "poly_gcd", "squarefree_part", "xgcd",
]
