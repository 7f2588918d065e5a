"""
Numerical rank and the column/row selection sets of each deflation order.

Indices in ``SelectionSets`` are 1-based, matching how the sets are written in
reports; all NumPy indexing converts on the way in.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy import linalg as sla

from src.core.exceptions import SelectionError, UsageError
from src.core.logger import logger


@dataclass(frozen=True)
class SelectionSets:
    """Column set C and row set K chosen at deflation order ``order``."""

    C: tuple[int, ...]
    K: tuple[int, ...]
    order: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "C", tuple(self.C))
        object.__setattr__(self, "K", tuple(self.K))
        if len(self.C) != len(self.K):
            raise UsageError(f"|C|={len(self.C)} differs from |K|={len(self.K)}")

    @property
    def d(self) -> int:
        return len(self.C)

    def is_nested_in(self, previous: SelectionSets) -> bool:
        return set(self.C) <= set(previous.C) and set(self.K) <= set(previous.K)

    def to_dict(self) -> dict[str, object]:
        return {"order": self.order, "C": list(self.C), "K": list(self.K)}


def _as_matrix(A: object) -> np.ndarray:
    matrix = np.asarray(A)
    if matrix.ndim != 2:
        raise UsageError(f"expected a 2-D matrix, got shape {matrix.shape}")
    if matrix.size and not np.all(np.isfinite(matrix)):
        raise UsageError("matrix has non-finite entries")
    return matrix


def singular_values(A: object) -> np.ndarray:
    matrix = _as_matrix(A)
    if matrix.size == 0:
        return np.zeros(0)
    return sla.svd(matrix, compute_uv=False)


def numerical_rank(A: object, eps: float) -> tuple[int, np.ndarray]:
    """Number of singular values >= eps, plus the descending singular values."""
    if not math.isfinite(eps) or eps <= 0:
        raise UsageError(f"eps must be a positive finite number (got {eps})")
    sigma = singular_values(A)
    return int(np.count_nonzero(sigma >= eps)), sigma


def smallest_singular_value(A: object) -> float:
    sigma = singular_values(A)
    return float(sigma[-1]) if sigma.size else 0.0


def _pivot_order(basis_rows: np.ndarray) -> list[int]:
    """Row order of ``basis_rows`` by column-pivoted QR of its transpose."""
    if basis_rows.size == 0:
        return list(range(basis_rows.shape[0]))
    _, _, piv = sla.qr(basis_rows.conj().T, pivoting=True, mode="economic")
    return [int(p) for p in piv]


def _columns_ok(matrix: np.ndarray, chosen: Sequence[int], target: int, eps: float) -> bool:
    keep = [j for j in range(matrix.shape[1]) if j + 1 not in chosen]
    if not keep:
        return target == 0
    rank, _ = numerical_rank(matrix[:, keep], eps)
    return rank == target


def _rows_ok(
    matrix: np.ndarray, chosen: Sequence[int], base_rank: int, row_offset: int, eps: float
) -> bool:
    rows = matrix.shape[0]
    units = np.zeros((rows, len(chosen)), dtype=matrix.dtype if matrix.size else float)
    for col, index in enumerate(chosen):
        units[row_offset + index - 1, col] = 1.0
    augmented = np.hstack([matrix, units]) if matrix.size else units
    rank, _ = numerical_rank(augmented, eps)
    return rank == base_rank + len(chosen)


def select_columns(
    J: object,
    d: int,
    eps: float,
    forced_superset: SelectionSets | None = None,
    n_x: int | None = None,
) -> tuple[int, ...]:
    """Column set C of size d whose removal keeps the numerical rank of J.

    Candidates are the x-columns ``1..n_x``, or ``forced_superset.C`` when the
    previous order's selection must contain the new one. Candidates are added
    greedily in ascending order, so the result is the lexicographically
    smallest valid set. Column-pivoted QR on the numerical null-space basis is
    tried only when the greedy scan comes up short.
    """
    matrix = _as_matrix(J)
    cols = matrix.shape[1]
    if d == 0:
        return ()
    target, _ = numerical_rank(matrix, eps)
    pool = _pool(forced_superset.C if forced_superset else None, n_x or cols, cols)
    if d > len(pool):
        raise SelectionError(f"corank {d} exceeds the {len(pool)} candidate columns {pool}")

    chosen: list[int] = []
    for c in pool:
        if _columns_ok(matrix, chosen + [c], target, eps):
            chosen.append(c)
            if len(chosen) == d:
                break

    if len(chosen) != d:
        logger.debug("Greedy column scan stopped at %s, trying pivoted QR", chosen)
        _, _, vh = sla.svd(matrix)
        null_basis = vh[target:, :].conj().T
        order = _pivot_order(null_basis[[c - 1 for c in pool], :])
        pivoted = sorted(pool[p] for p in order[:d])
        if not _columns_ok(matrix, pivoted, target, eps):
            raise SelectionError(
                f"no column set of size {d} within {pool} keeps rank {target} "
                f"(found {chosen}); eps={eps:g} may be mis-set"
            )
        chosen = pivoted
    logger.debug("Selected columns C=%s (d=%d)", chosen, d)
    return tuple(chosen)


def select_rows(
    B: object,
    d: int,
    eps: float,
    forced_superset: SelectionSets | None = None,
    row_offset: int = 0,
    n_x: int | None = None,
) -> tuple[int, ...]:
    """Row set K of size d such that [B | e_K] has full numerical column rank.

    The unit vector of candidate k sits at row ``row_offset + k``. Ranking uses
    column-pivoted QR on the left null-space basis of B, with a greedy
    ascending scan as fallback.
    """
    matrix = _as_matrix(B)
    rows = matrix.shape[0]
    if d == 0:
        return ()
    n_pool = n_x if n_x is not None else rows - row_offset
    pool = _pool(forced_superset.K if forced_superset else None, n_pool, rows - row_offset)
    if d > len(pool):
        raise SelectionError(f"corank {d} exceeds the {len(pool)} candidate rows {pool}")
    base_rank, _ = numerical_rank(matrix, eps) if matrix.size else (0, None)

    if matrix.size:
        u, _, _ = sla.svd(matrix, full_matrices=True)
        left_null = u[:, base_rank:]
    else:
        left_null = np.eye(rows)
    order = _pivot_order(left_null[[row_offset + k - 1 for k in pool], :])
    chosen = sorted(pool[p] for p in order[:d])

    if not _rows_ok(matrix, chosen, base_rank, row_offset, eps):
        logger.debug("Pivoted row choice %s rejected, falling back to greedy", chosen)
        chosen = []
        for k in pool:
            if _rows_ok(matrix, chosen + [k], base_rank, row_offset, eps):
                chosen.append(k)
                if len(chosen) == d:
                    break
        if len(chosen) != d:
            raise SelectionError(
                f"no row set of size {d} within {pool} completes the rank "
                f"(found {chosen}, base rank {base_rank})"
            )
    logger.debug("Selected rows K=%s (d=%d, offset %d)", chosen, d, row_offset)
    return tuple(chosen)


def _pool(superset: Iterable[int] | None, n: int, limit: int) -> list[int]:
    if superset is not None:
        pool = sorted(set(superset))
    else:
        pool = list(range(1, n + 1))
    for index in pool:
        if not 1 <= index <= limit:
            raise UsageError(f"selection index {index} out of range 1..{limit}")
    return pool
