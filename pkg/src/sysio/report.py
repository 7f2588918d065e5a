"""JSON certificate report (one object per run, stable key order)."""

from __future__ import annotations

import json
from typing import Any, Sequence

from src.interval import Box, CInterval
from src.sysio.parser import format_system
from src.viss.algorithm import VissResult


def _interval_json(entry: Any) -> Any:
    if isinstance(entry, CInterval):
        return {
            "re": [repr(entry.re.inf), repr(entry.re.sup)],
            "im": [repr(entry.im.inf), repr(entry.im.sup)],
        }
    return [repr(entry.inf), repr(entry.sup)]


def _box_json(box: Box) -> list[Any]:
    return [_interval_json(entry) for entry in box]


def build_report(
    result: VissResult | None,
    system_name: str,
    *,
    n: int | None = None,
    eps: float | None = None,
    coranks: Sequence[int] | None = None,
    error: str | None = None,
    runtime_ms: float | None = None,
) -> dict[str, Any]:
    """Report dictionary; inclusion arrays are present only for certified runs."""
    certified = bool(result is not None and result.certified)
    report: dict[str, Any] = {
        "system": system_name,
        "n": result.F.nvars if result is not None else n,
        "certified": certified,
        "deflations": result.deflation_count if result is not None else (
            max(len(coranks) - 1, 0) if coranks else None
        ),
        "corank_sequence": list(result.corank_sequence) if result is not None else list(coranks or []),
        "sigma_min_before": result.sigma_min_before if result is not None else None,
        "sigma_min_after": result.sigma_min_after if result is not None else None,
    }
    if certified:
        report["x_inclusions"] = _box_json(result.x_box)
        report["lambda_inclusions"] = _box_json(result.lambda_box)
        report["b_inclusions"] = _box_json(result.b_box)
    if result is not None:
        report["perturbed_system_text"] = format_system(result.F_tilde)
    report["eps"] = result.eps if result is not None else eps
    if runtime_ms is None and result is not None:
        runtime_ms = result.runtime_ms
    report["runtime_ms"] = round(runtime_ms, 3) if runtime_ms is not None else None

    if not certified:
        diagnostics: dict[str, Any] = {}
        if error:
            diagnostics["error"] = error
        if result is not None:
            certificate = result.certificate
            diagnostics.update(
                {
                    "reason": certificate.reason,
                    "inflation_rounds": certificate.iterations,
                    "newton_steps": certificate.newton_steps,
                    "residual_norm": certificate.residual_norm,
                }
            )
        report["diagnostics"] = diagnostics
    return report


def emit_report(result: VissResult | None, system_name: str, **kwargs: Any) -> str:
    return json.dumps(build_report(result, system_name, **kwargs), indent=2)
