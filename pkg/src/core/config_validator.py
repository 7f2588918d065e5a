"""Validation of run configuration (defaults, env overrides and CLI flags)."""

from __future__ import annotations

import math

from src.core.logger import logger


def validate_run_config(
    eps: float,
    max_deflations: int,
    inflation_factor: float,
    inflation_rounds: int,
) -> bool:
    """Check the tunables of a certification run before any work starts.

    Returns:
        True when every value is usable, False otherwise (problems are logged).
    """
    problems = []

    if not math.isfinite(eps) or eps <= 0:
        problems.append(f"eps must be a positive finite number (got {eps})")
    if max_deflations < 0:
        problems.append(f"max-deflations must be >= 0 (got {max_deflations})")
    if not math.isfinite(inflation_factor) or inflation_factor <= 1.0:
        problems.append(f"inflation-factor must be > 1 (got {inflation_factor})")
    if inflation_rounds < 1:
        problems.append(f"inflation-rounds must be >= 1 (got {inflation_rounds})")

    if problems:
        logger.error("=" * 60)
        logger.error("ERROR: invalid run configuration")
        logger.error("=" * 60)
        for problem in problems:
            logger.error("  - %s", problem)
        logger.error("Check the command-line flags or the VISS_* variables in config.env")
        return False

    logger.debug(
        "Run configuration: eps=%g max_deflations=%d inflation=%g x%d",
        eps,
        max_deflations,
        inflation_factor,
        inflation_rounds,
    )
    return True
