"""Dimension polynomials of linear difference-differential systems."""
from .lambda_monoid import LambdaMonomial, Partition, Term
from .linpoly import LinearDSPolynomial, charset_linear_system, charset_single
from .numpoly import NumericalPolynomial

__all__ = [
    "LambdaMonomial",
    "Partition",
    "Term",
    "LinearDSPolynomial",
    "NumericalPolynomial",
    "charset_single",
    "charset_linear_system",
]

__version__ = "0.1.0"
