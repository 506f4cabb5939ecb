"""Exact multivariate polynomial and rational-function arithmetic over Q."""

from .linalg import (
    adjugate,
    charpoly,
    determinant,
    identity,
    inverse,
    matmul,
    nullspace,
    rank,
    resultant,
    rref,
)
from .numbers import QuadraticNumber, as_fraction, rational_sqrt
from .poly import (
    NEG_INF,
    Poly,
    arith,
    associates,
    default_names,
    divides,
    evaluate,
    exact_divide,
    gcd,
    gcd_list,
    is_squarefree,
    multivariate_gcd,
    partial_derivative,
    squarefree_part,
    substitute_linear,
)
from .ratfun import RatFun

__all__ = [
    "NEG_INF", "Poly", "QuadraticNumber", "RatFun", "adjugate", "arith", "as_fraction",
    "associates", "charpoly", "default_names", "determinant", "divides", "evaluate",
    "exact_divide", "gcd", "gcd_list", "identity", "inverse", "is_squarefree", "matmul",
    "multivariate_gcd", "nullspace", "partial_derivative", "rank", "rational_sqrt",
    "resultant", "rref", "squarefree_part", "substitute_linear",
]
