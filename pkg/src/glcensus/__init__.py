"""Exact census of the abelian covers of GL_n(q) and its group-level verification."""

from glcensus.exactalg import (
    BigRational,
    IntPolynomial,
    RationalFunction,
    phi_d,
    rf_arith,
    rf_eval,
)

__all__ = [
    "BigRational",
    "IntPolynomial",
    "RationalFunction",
    "phi_d",
    "rf_arith",
    "rf_eval",
]
