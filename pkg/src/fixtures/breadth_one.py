"""
Breadth-one comparison fixture.

A hand-built 8x8 square system for the 2-variable RuGr09 problem
(x1^2*x2 - x1*x2^2, x1 - x2^2) at the origin: the multiplicity-4 breadth-one
structure written out with three multiplier unknowns and three smoothing
parameters. Certifying it is the small-size counterpart to the 16x16 system
that generic deflation produces for the same problem.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from src.core.constants import DEFAULT_EPS
from src.core.exceptions import VerificationFailedError
from src.core.logger import logger
from src.poly.polynomial import PolySystem
from src.sysio.parser import parse_system
from src.verification.krawczyk import VerificationCertificate, verify_root
from src.viss.algorithm import VissResult, viss

BREADTH_ONE_SYSTEM_TEXT = """\
vars x1 x2 b1 b2 b3 lam1 lam2 lam3
x1^2*x2 - x1*x2^2 - b1 - b2*x2 - 0.5*b3*x2^2
x1 - x2^2
2*lam1*x1*x2 - lam1*x2^2 + x1^2 - 2*x1*x2 - b2 - b3*x2
lam1 - 2*x2
lam1^2*x2 + 2*lam1*x1 - 2*lam1*x2 + 2*lam2*x1*x2 - lam2*x2^2 - x1 - 0.5*b3
lam2 - 1
lam1^2 + 2*lam1*lam2*x2 - lam1 + 2*lam2*x1 - 2*lam2*x2 + 2*lam3*x1*x2 - lam3*x2^2
lam3
"""

BREADTH_ONE_START: tuple[float, ...] = (0.002, 0.003, -0.001, 0.0015, -0.002, 0.002, 1.001, -0.01)

ORIGINAL_SYSTEM_TEXT = """\
vars x1 x2
x1^2*x2 - x1*x2^2
x1 - x2^2
"""


@dataclass(frozen=True)
class BreadthOneFixture:
    system: PolySystem
    start: tuple[float, ...]
    mu: int = 4

    @property
    def size(self) -> int:
        return self.system.nvars


def breadth_one_fixture() -> BreadthOneFixture:
    return BreadthOneFixture(parse_system(BREADTH_ONE_SYSTEM_TEXT), BREADTH_ONE_START)


def verify_breadth_one_fixture(
    start: Sequence[float] | None = None, system: PolySystem | None = None
) -> VerificationCertificate:
    """Run the Krawczyk verifier directly on the 8x8 system (no deflation)."""
    fixture = breadth_one_fixture()
    G = system if system is not None else fixture.system
    y0 = np.asarray(start if start is not None else fixture.start, dtype=float)
    certificate = verify_root(G, y0)
    logger.info(
        "Breadth-one fixture: %s after %d round(s), size %d",
        certificate.status,
        certificate.iterations,
        G.nvars,
    )
    return certificate


@dataclass(frozen=True, eq=False)
class CrossCheckReport:
    fixture_certificate: VerificationCertificate
    viss_result: VissResult | None
    fixture_size: int
    viss_size: int | None
    fixture_x_width: float
    viss_x_width: float | None
    error: str = ""

    @property
    def both_certified(self) -> bool:
        return (
            self.fixture_certificate.certified
            and self.viss_result is not None
            and self.viss_result.certified
        )

    def to_dict(self) -> dict[str, object]:
        return {
            "fixture_certified": self.fixture_certificate.certified,
            "fixture_size": self.fixture_size,
            "fixture_x_width": self.fixture_x_width,
            "viss_certified": bool(self.viss_result and self.viss_result.certified),
            "viss_size": self.viss_size,
            "viss_x_width": self.viss_x_width,
            "error": self.error,
        }


def cross_check_with_viss(
    eps: float = DEFAULT_EPS, x_start: Sequence[float] | None = None
) -> CrossCheckReport:
    """Certify the 8x8 fixture, then run generic deflation on the 2x2 system.

    Without ``x_start`` the deflation starts from the x-part of the refined
    fixture center.
    """
    fixture = breadth_one_fixture()
    certificate = verify_breadth_one_fixture()
    fixture_box = certificate.inclusion()
    fixture_x_width = max(fixture_box[i].width for i in range(2))

    if x_start is None:
        x_start = [float(v) for v in np.real(certificate.center[:2])]

    original = parse_system(ORIGINAL_SYSTEM_TEXT)
    result: VissResult | None = None
    error = ""
    try:
        result = viss(original, list(x_start), eps)
    except VerificationFailedError as exc:
        result = exc.result
        error = str(exc)
    except Exception as exc:  # reported next to the fixture outcome
        logger.warning("Generic deflation failed on the breadth-one comparison: %s", exc)
        error = str(exc)

    return CrossCheckReport(
        fixture_certificate=certificate,
        viss_result=result,
        fixture_size=fixture.size,
        viss_size=result.system_size if result is not None else None,
        fixture_x_width=fixture_x_width,
        viss_x_width=result.x_width() if result is not None else None,
        error=error,
    )
