"""Output formatting for the CLI."""

from __future__ import annotations

from datetime import datetime
from typing import Sequence

import pandas as pd

from src.core.logger import logger
from src.fixtures import FixtureSpec
from src.viss import VissResult


def show_header(command: str) -> None:
    logger.info("")
    logger.info("=" * 60)
    logger.info("   VERIFIED SINGULAR SOLUTIONS - %s", command.upper())
    logger.info("=" * 60)
    logger.info("   Date/Time: %s", datetime.now().strftime("%Y-%m-%d %H:%M:%S"))
    logger.info("=" * 60)


def _fmt(value: float | None) -> str:
    return "-" if value is None or pd.isna(value) else f"{value:.1e}"


def show_certify_summary(result: VissResult) -> None:
    """Human summary of one run."""
    status = "CERTIFIED" if result.certified else "NOT CERTIFIED"
    logger.info("\n[%s]", status)
    logger.info("-" * 40)
    logger.info("  Variables: %d", result.F.nvars)
    logger.info("  Corank sequence: %s", " -> ".join(str(d) for d in result.corank_sequence))
    logger.info("  Deflations: %d (final size %d)", result.deflation_count, result.system_size)
    logger.info(
        "  sigma_min: %s -> %s",
        _fmt(result.sigma_min_before),
        _fmt(result.sigma_min_after),
    )
    for selection in result.selections:
        logger.info("  Order %d: C=%s K=%s", selection.order, list(selection.C), list(selection.K))
    if result.certified:
        logger.info("  |x - x^| <= %s, |b| <= %s", _fmt(result.x_width()), _fmt(result.b_bound()))
    else:
        certificate = result.certificate
        logger.info(
            "  Krawczyk: %d round(s), residual %s, reason: %s",
            certificate.iterations,
            _fmt(certificate.residual_norm),
            certificate.reason or "-",
        )
    logger.info("  Runtime: %.1f ms", result.runtime_ms)


def _coranks(value: object) -> str:
    if not isinstance(value, list):
        return "-"
    return "->".join(str(d) for d in value)


def show_bench_table(table: pd.DataFrame) -> None:
    if table.empty:
        logger.info("No fixtures run.")
        return
    view = pd.DataFrame(
        {
            "System": table["fixture"],
            "n": table["n"],
            "mu": table["mu"].map(lambda v: "-" if v is None or pd.isna(v) else int(v)),
            "Coranks": table["coranks"].map(_coranks),
            "Match": table["coranks_match"].map(lambda v: "-" if v is None else ("yes" if v else "NO")),
            "sigma before": table["sigma_min_before"].map(_fmt),
            "sigma after": table["sigma_min_after"].map(_fmt),
            "||X||": table["x_width"].map(_fmt),
            "||B||": table["b_width"].map(_fmt),
            "Certified": table["certified"].map(lambda v: "yes" if v else "no"),
        }
    )
    logger.info("\n[BENCHMARK]")
    for line in view.to_string(index=False).splitlines():
        logger.info(line)

    failures = table[~table["certified"].astype(bool)]
    for _, row in failures.iterrows():
        if row.get("error"):
            logger.info("  %s: %s", row["fixture"], row["error"])


def show_quarantined(specs: Sequence[FixtureSpec]) -> None:
    if not specs:
        return
    logger.info("\n[QUARANTINED]")
    for spec in specs:
        logger.info("  %s (n=%d): %s", spec.name, spec.n, spec.reason)
