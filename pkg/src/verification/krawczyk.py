"""
Krawczyk existence test with epsilon-inflation.

For a square system G, a center c, an offset box X and any real or complex
matrix R, if

    K = -R [G(c)] + (I - R M) X  lies strictly inside X,

where M encloses the Jacobian of G over c + X, then G has exactly one root
in c + X, it lies in c + K, and every matrix in M is nonsingular.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np
from scipy import linalg as sla

from src.core.constants import (
    INFLATION_FACTOR,
    INFLATION_FLOOR,
    INFLATION_ROUNDS,
    NEWTON_MAX_STEPS,
    NEWTON_TOL,
)
from src.core.exceptions import InconclusiveError, UsageError
from src.core.logger import logger
from src.core.metrics import timed
from src.interval import (
    Box,
    CInterval,
    Interval,
    IntervalLike,
    IntervalMatrix,
    enclose_poly,
    subset_interior,
)
from src.linalg import approximate_inverse, smallest_singular_value
from src.poly.polynomial import PolySystem

Status = Literal["certified", "inconclusive"]


@dataclass(frozen=True, eq=False)
class VerificationCertificate:
    status: Status
    center: np.ndarray
    X: Box
    iterations: int
    residual_norm: float
    sigma_min_final: float
    newton_steps: int = 0
    reason: str = ""

    @property
    def certified(self) -> bool:
        return self.status == "certified"

    def inclusion(self) -> Box:
        """Enclosure of the unique root: center + X."""
        return self.X.shifted(list(self.center))


@dataclass(frozen=True)
class KrawczykStep:
    certified: bool
    K: Box | None
    reason: str = ""


def _is_exact_zero(value: IntervalLike) -> bool:
    if isinstance(value, CInterval):
        return _is_exact_zero(value.re) and _is_exact_zero(value.im)
    return value.inf == 0.0 and value.sup == 0.0


def _point_box(center: Sequence[complex | float]) -> Box:
    return Box(CInterval.point(c) if isinstance(c, complex) else Interval.point(c) for c in center)


def _center_list(center: np.ndarray) -> list[complex | float]:
    if np.iscomplexobj(center):
        return [complex(c) for c in center]
    return [float(c) for c in center]


def jacobian_enclosure(G: PolySystem, center: Sequence[complex | float], X: Box) -> IntervalMatrix:
    """M with M[i][j] containing dG_i/dy_j over center + X."""
    if X.dim != G.nvars or len(center) != G.nvars:
        raise UsageError(f"dimension mismatch: system {G.nvars}, center {len(center)}, box {X.dim}")
    Y = X.shifted(list(center))
    cache: dict = {}
    return IntervalMatrix(
        [enclose_poly(entry, Y, cache) for entry in row] for row in G.jacobian_matrix
    )


def residual_enclosure(G: PolySystem, center: Sequence[complex | float]) -> list[IntervalLike]:
    """Rigorous enclosure of G(center)."""
    point = _point_box(center)
    cache: dict = {}
    return [enclose_poly(p, point, cache) for p in G.polys]


def krawczyk_test(
    G: PolySystem,
    center: Sequence[complex | float],
    X: Box,
    R: np.ndarray,
) -> KrawczykStep:
    """One containment check K subset int(X)."""
    if not G.is_square():
        raise UsageError(f"krawczyk_test needs a square system ({G.arity}x{G.nvars})")
    n = G.nvars
    R = np.asarray(R)
    if R.shape != (n, n):
        raise UsageError(f"preconditioner has shape {R.shape}, expected ({n}, {n})")

    try:
        residual = residual_enclosure(G, center)
        M = jacobian_enclosure(G, center, X)
        R_entries = [[_scalar(R[i, k]) for k in range(n)] for i in range(n)]

        K_entries: list[IntervalLike] = []
        for i in range(n):
            acc: IntervalLike = Interval(0.0, 0.0)
            for k in range(n):
                r_ik = R_entries[i][k]
                if r_ik == 0 or _is_exact_zero(residual[k]):
                    continue
                acc = acc - residual[k] * r_ik
            for j in range(n):
                a_ij: IntervalLike = Interval(1.0, 1.0) if i == j else Interval(0.0, 0.0)
                for k in range(n):
                    r_ik = R_entries[i][k]
                    m_kj = M.rows[k][j]
                    if r_ik == 0 or _is_exact_zero(m_kj):
                        continue
                    a_ij = a_ij - m_kj * r_ik
                if _is_exact_zero(a_ij):
                    continue
                acc = acc + a_ij * X[j]
            K_entries.append(acc)
    except InconclusiveError as exc:
        return KrawczykStep(False, None, str(exc))

    K = Box(K_entries)
    if not K.is_finite():
        return KrawczykStep(False, K, "non-finite Krawczyk image")
    if subset_interior(K, X):
        return KrawczykStep(True, K)
    return KrawczykStep(False, K, "Krawczyk image not inside the candidate box")


def _scalar(value: complex | float) -> complex | float:
    value = complex(value)
    return value.real if value.imag == 0.0 else value


def newton_refine(
    G: PolySystem,
    y0: np.ndarray,
    max_steps: int = NEWTON_MAX_STEPS,
    tol: float = NEWTON_TOL,
) -> tuple[np.ndarray, int]:
    """Floating Newton iteration; stops when ||dy|| <= tol*||y|| or dy == 0."""
    y = np.array(y0, copy=True)
    steps = 0
    for _ in range(max_steps):
        try:
            delta = sla.solve(G.jacobian_at(y), -G.evaluate(y), check_finite=True)
        except (sla.LinAlgError, ValueError):
            break
        if not np.all(np.isfinite(delta)):
            break
        y = y + delta
        steps += 1
        norm_delta = float(np.linalg.norm(delta))
        if norm_delta == 0.0 or norm_delta <= tol * float(np.linalg.norm(y)):
            break
    return y, steps


def _newton_correction(G: PolySystem, y: np.ndarray) -> np.ndarray:
    try:
        delta = sla.solve(G.jacobian_at(y), -G.evaluate(y))
    except (sla.LinAlgError, ValueError):
        return np.zeros_like(y)
    return delta if np.all(np.isfinite(delta)) else np.zeros_like(y)


def _offset_box(radius: float, size: int, use_complex: bool) -> Box:
    if not use_complex:
        return Box(Interval.symmetric(radius) for _ in range(size))
    return Box(
        CInterval(Interval.symmetric(radius), Interval.symmetric(radius)) for _ in range(size)
    )


def _magnitude(K: Box, use_complex: bool) -> float:
    """Largest magnitude over every component of K (real and imaginary parts)."""
    if not use_complex:
        return max((entry.mag() for entry in K), default=0.0)
    entries = [CInterval.coerce(entry) for entry in K]
    return max((max(e.re.mag(), e.im.mag()) for e in entries), default=0.0)


@timed
def verify_root(
    G: PolySystem,
    y_tilde: Sequence[complex | float] | np.ndarray,
    *,
    newton_steps: int = NEWTON_MAX_STEPS,
    newton_tol: float = NEWTON_TOL,
    inflation_factor: float = INFLATION_FACTOR,
    inflation_floor: float = INFLATION_FLOOR,
    inflation_rounds: int = INFLATION_ROUNDS,
) -> VerificationCertificate:
    """Refine ``y_tilde`` by Newton, then inflate a box around it until Krawczyk certifies."""
    if not G.is_square():
        raise UsageError(f"verify_root needs a square system ({G.arity}x{G.nvars})")
    y0 = np.asarray(y_tilde)
    if y0.shape != (G.nvars,):
        raise UsageError(f"approximate root has shape {y0.shape}, expected ({G.nvars},)")
    use_complex = np.iscomplexobj(y0) or not G.is_real()
    y0 = y0.astype(complex if use_complex else float)

    center, steps = newton_refine(G, y0, newton_steps, newton_tol)
    center_list = _center_list(center)
    residual_norm = float(np.linalg.norm(G.evaluate(center)))
    J = G.jacobian_at(center)
    sigma_min = smallest_singular_value(J)
    logger.debug(
        "Newton: %d steps, residual %.3e, sigma_min %.3e (size %d)",
        steps,
        residual_norm,
        sigma_min,
        G.nvars,
    )

    def result(status: Status, X: Box, rounds: int, reason: str = "") -> VerificationCertificate:
        return VerificationCertificate(
            status=status,
            center=center,
            X=X,
            iterations=rounds,
            residual_norm=residual_norm,
            sigma_min_final=sigma_min,
            newton_steps=steps,
            reason=reason,
        )

    delta = _newton_correction(G, center)
    size = G.nvars
    delta_mag = float(np.max(np.maximum(np.abs(delta.real), np.abs(delta.imag)))) if size else 0.0
    radius = inflation_factor * delta_mag + inflation_floor
    X = _offset_box(radius, size, use_complex)

    try:
        R = approximate_inverse(J)
    except InconclusiveError as exc:
        logger.info("Verification inconclusive: %s", exc)
        return result("inconclusive", X, 0, str(exc))

    reason = ""
    for round_index in range(1, inflation_rounds + 1):
        step = krawczyk_test(G, center_list, X, R)
        if step.certified and step.K is not None:
            logger.debug("Krawczyk certified after %d round(s), radius %.3e", round_index, radius)
            return result("certified", step.K, round_index)
        reason = step.reason
        if step.K is not None and step.K.is_finite():
            radius = max(radius, _magnitude(step.K, use_complex))
        radius = inflation_factor * radius + inflation_floor
        if not math.isfinite(radius):
            break
        X = _offset_box(radius, size, use_complex)

    logger.info("Verification inconclusive after %d round(s): %s", inflation_rounds, reason)
    return result("inconclusive", X, inflation_rounds, reason)
