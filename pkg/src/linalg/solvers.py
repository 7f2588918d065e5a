"""Floating-point solvers: approximate inverse and minimum-norm least squares."""

from __future__ import annotations

import warnings

import numpy as np
from scipy import linalg as sla

from src.core.exceptions import InconclusiveError, UsageError


def approximate_inverse(A: object) -> np.ndarray:
    """R ~ A^-1 through LU with partial pivoting; no accuracy guarantee."""
    matrix = np.asarray(A)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise UsageError(f"approximate_inverse needs a square matrix, got {matrix.shape}")
    if matrix.size == 0:
        return np.zeros((0, 0), dtype=matrix.dtype)
    if not np.all(np.isfinite(matrix)):
        raise InconclusiveError("cannot invert a matrix with non-finite entries")

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", sla.LinAlgWarning)
        lu, piv = sla.lu_factor(matrix, check_finite=False)
    if np.any(np.diag(lu) == 0):
        raise InconclusiveError("LU factorization is exactly singular")

    identity = np.eye(matrix.shape[0], dtype=lu.dtype)
    R = sla.lu_solve((lu, piv), identity, check_finite=False)
    if not np.all(np.isfinite(R)):
        raise InconclusiveError("approximate inverse has non-finite entries")
    return R


def least_squares(A: object, rhs: object) -> np.ndarray:
    """Minimum-norm minimizer of ||A x - rhs||_2 (SVD-based driver)."""
    matrix = np.asarray(A)
    vector = np.asarray(rhs).reshape(-1)
    if matrix.ndim != 2 or matrix.shape[0] != vector.shape[0]:
        raise UsageError(f"shape mismatch: A {matrix.shape}, rhs {vector.shape}")
    dtype = np.result_type(matrix, vector, float)
    if matrix.shape[1] == 0:
        return np.zeros(0, dtype=dtype)
    if matrix.shape[0] == 0:
        return np.zeros(matrix.shape[1], dtype=dtype)
    solution, *_ = sla.lstsq(matrix.astype(dtype), vector.astype(dtype), lapack_driver="gelsd")
    return solution
