"""Floating-point linear algebra used for decisions (not rigorous)."""

from src.linalg.rank import (
    SelectionSets,
    numerical_rank,
    select_columns,
    select_rows,
    singular_values,
    smallest_singular_value,
)
from src.linalg.solvers import approximate_inverse, least_squares

__all__ = [
    "SelectionSets",
    "approximate_inverse",
    "least_squares",
    "numerical_rank",
    "select_columns",
    "select_rows",
    "singular_values",
    "smallest_singular_value",
]
