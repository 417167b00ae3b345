"""Exact scalars, sparse polynomials, truncated series and exact linear algebra."""

from .linalg import (
    SparseSpan,
    congruence_diagonalize,
    determinant,
    identity,
    inverse,
    matmul,
    matvec,
    nullspace,
    primitive,
    rank,
    solve,
    transpose,
)
from .parse import PolyParseError, parse_poly, parse_rational
from .poly import ZERO_DEGREE, MultiPoly, TruncSeries, compose, from_sympy, is_irreducible_over_q, poly_sum, to_sympy
from .scalars import GaussRational, I, Rational, conj, exact_str

poly_compose = compose

__all__ = [
    "GaussRational",
    "I",
    "MultiPoly",
    "PolyParseError",
    "Rational",
    "SparseSpan",
    "TruncSeries",
    "ZERO_DEGREE",
    "compose",
    "congruence_diagonalize",
    "conj",
    "determinant",
    "exact_str",
    "from_sympy",
    "identity",
    "is_irreducible_over_q",
    "inverse",
    "matmul",
    "matvec",
    "nullspace",
    "parse_poly",
    "parse_rational",
    "poly_compose",
    "poly_sum",
    "primitive",
    "rank",
    "solve",
    "to_sympy",
    "transpose",
]
