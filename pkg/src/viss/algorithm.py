"""
Verified isolated singular solutions: deflate until the augmented system is
regular at the approximation, then certify it with the Krawczyk test.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from src.core.constants import (
    DEFAULT_EPS,
    DEFAULT_MAX_DEFLATIONS,
    INFLATION_FACTOR,
    INFLATION_FLOOR,
    INFLATION_ROUNDS,
    NEWTON_MAX_STEPS,
    NEWTON_TOL,
)
from src.core.exceptions import DeflationLimitError, UsageError, VerificationFailedError
from src.core.logger import logger
from src.core.metrics import timed
from src.deflation import DeflationState, VariableLayout, corank, deflate_step, initial_state
from src.interval import Box, CInterval, Interval, IntervalLike, enclose_poly
from src.linalg import SelectionSets, smallest_singular_value
from src.poly.polynomial import PolySystem
from src.verification.krawczyk import VerificationCertificate, verify_root


@dataclass(frozen=True, eq=False)
class VissResult:
    """Outcome of one run; boxes are inclusions (center + offset), not offsets."""

    F: PolySystem
    F_tilde: PolySystem
    certificate: VerificationCertificate
    x_box: Box
    lambda_box: Box
    b_box: Box
    corank_sequence: tuple[int, ...]
    sigma_min_before: float
    sigma_min_after: float
    deflation_count: int
    layout: VariableLayout
    selections: tuple[SelectionSets, ...]
    eps: float
    state: DeflationState
    runtime_ms: float = 0.0
    lambda_names: tuple[str, ...] = field(default=())

    @property
    def certified(self) -> bool:
        return self.certificate.certified

    @property
    def system_size(self) -> int:
        return self.layout.total

    def x_bound(self) -> float:
        return self.x_box.max_mag()

    def b_bound(self) -> float:
        return self.b_box.max_mag()

    def x_width(self) -> float:
        return max((e.width for e in self.x_box), default=0.0)

    def b_width(self) -> float:
        return max((e.width for e in self.b_box), default=0.0)

    def lambda_inclusion(self, name: str) -> IntervalLike:
        return self.lambda_box[self.lambda_names.index(name)]


def _partition(layout: VariableLayout, inclusion: Box) -> tuple[Box, Box, Box]:
    pick = lambda indices: Box(inclusion[i] for i in indices)  # noqa: E731
    return pick(layout.indices("x")), pick(layout.indices("lambda")), pick(layout.indices("b"))


@timed
def viss(
    F: PolySystem,
    x_tilde: Sequence[complex | float] | np.ndarray,
    eps: float = DEFAULT_EPS,
    max_deflations: int = DEFAULT_MAX_DEFLATIONS,
    *,
    complex_arithmetic: bool = False,
    newton_steps: int = NEWTON_MAX_STEPS,
    newton_tol: float = NEWTON_TOL,
    inflation_factor: float = INFLATION_FACTOR,
    inflation_floor: float = INFLATION_FLOOR,
    inflation_rounds: int = INFLATION_ROUNDS,
    raise_on_failure: bool = True,
) -> VissResult:
    """Deflate F at x_tilde until regular, then certify the augmented root.

    Raises:
        DeflationLimitError: the system was still singular after ``max_deflations`` steps.
        VerificationFailedError: the Krawczyk test stayed inconclusive (only when
            ``raise_on_failure``; the partial result is attached).
    """
    if not eps > 0 or not np.isfinite(eps):
        raise UsageError(f"eps must be a positive finite number (got {eps})")
    if max_deflations < 0:
        raise UsageError(f"max_deflations must be >= 0 (got {max_deflations})")

    started = time.perf_counter()
    state = initial_state(F, x_tilde, complex_arithmetic)
    sigma_before = smallest_singular_value(state.jacobian_at())
    logger.info("VISS on %d x %d system, eps=%g", F.arity, F.nvars, eps)

    while True:
        d = corank(state, eps)
        logger.debug("Order %d: corank %d (size %d)", state.s, d, state.m)
        if d == 0:
            break
        if state.s >= max_deflations:
            coranks = list(state.coranks) + [d]
            raise DeflationLimitError(
                f"deflation cap {max_deflations} reached with corank {d} "
                f"(sequence {coranks})",
                coranks,
            )
        state = deflate_step(state, eps, d)

    certificate = verify_root(
        state.G,
        state.y_tilde,
        newton_steps=newton_steps,
        newton_tol=newton_tol,
        inflation_factor=inflation_factor,
        inflation_floor=inflation_floor,
        inflation_rounds=inflation_rounds,
    )
    x_box, lambda_box, b_box = _partition(state.layout, certificate.inclusion())
    result = VissResult(
        F=F,
        F_tilde=state.F_tilde,
        certificate=certificate,
        x_box=x_box,
        lambda_box=lambda_box,
        b_box=b_box,
        corank_sequence=tuple(state.coranks) + (0,),
        sigma_min_before=sigma_before,
        sigma_min_after=certificate.sigma_min_final,
        deflation_count=state.s,
        layout=state.layout,
        selections=state.selections,
        eps=eps,
        state=state,
        runtime_ms=(time.perf_counter() - started) * 1000.0,
        lambda_names=state.lambda_names,
    )

    if result.certified:
        logger.info(
            "Certified: coranks %s, size %d, |x| <= %.3e, |b| <= %.3e",
            list(result.corank_sequence),
            result.system_size,
            result.x_bound(),
            result.b_bound(),
        )
    elif raise_on_failure:
        raise VerificationFailedError(
            f"Krawczyk test inconclusive after {certificate.iterations} round(s) "
            f"(coranks {list(result.corank_sequence)}, sigma_min {certificate.sigma_min_final:.3e}): "
            f"{certificate.reason}",
            result,
        )
    return result


def consequence_check(result: VissResult) -> bool:
    """Re-evaluate F~ and F~_x v1 over the certified boxes; both must contain 0."""
    if not result.certified:
        return False
    F_tilde = result.F_tilde
    box = Box(list(result.x_box) + list(result.b_box))
    if box.dim != F_tilde.nvars:
        return False

    cache: dict = {}
    for poly in F_tilde.polys:
        if not enclose_poly(poly, box, cache).contains_zero():
            return False

    if not result.state.templates:
        return True
    v1 = _first_template_enclosure(result)
    n = result.F.nvars
    for row in F_tilde.jacobian_matrix:
        acc: IntervalLike = Interval(0.0, 0.0)
        for j in range(n):
            if row[j].is_zero():
                continue
            acc = acc + enclose_poly(row[j], box, cache) * v1[j]
        if not acc.contains_zero():
            return False
    return True


def _first_template_enclosure(result: VissResult) -> list[IntervalLike]:
    template = result.state.templates[0]
    entries: list[IntervalLike] = []
    for entry in template:
        if entry is None:
            entries.append(Interval(1.0, 1.0))
        else:
            value = result.lambda_inclusion(entry)
            entries.append(value if isinstance(value, (Interval, CInterval)) else Interval.point(value))
    return entries
