"""Sparse polynomial algebra."""

from src.poly.polynomial import (
    Polynomial,
    PolySystem,
    differentiate,
    evaluate,
    jacobian,
    jacobian_apply,
)

__all__ = [
    "PolySystem",
    "Polynomial",
    "differentiate",
    "evaluate",
    "jacobian",
    "jacobian_apply",
]
