"""CLI commands: certify one system, run the benchmark fixtures."""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Sequence

import pandas as pd

from src.cli.display import (
    show_bench_table,
    show_certify_summary,
    show_header,
    show_quarantined,
)
from src.core.constants import (
    BENCH_JSONL_FILE,
    BENCH_WORKERS,
    DEFAULT_EPS,
    DEFAULT_MAX_DEFLATIONS,
    ENABLE_PARALLEL_BENCH,
    EXIT_CERTIFIED,
    EXIT_DEFLATION_CAP,
    EXIT_NOT_CERTIFIED,
    EXIT_USAGE,
    INFLATION_FACTOR,
    INFLATION_ROUNDS,
)
from src.core.exceptions import (
    DeflationLimitError,
    UsageError,
    VerificationFailedError,
    VissError,
)
from src.core.logger import logger
from src.core.metrics import timed
from src.fixtures import (
    FixtureSpec,
    PlantedSystem,
    cross_check_with_viss,
    get_fixture,
    list_fixtures,
    load_fixture,
    planted_systems,
)
from src.poly.polynomial import PolySystem, Scalar
from src.sysio import build_report, parse_start, parse_system
from src.viss import VissResult, consequence_check, viss


@dataclass(frozen=True)
class RunFlags:
    """Options shared by ``certify`` and ``bench``.

    ``eps`` of None means the per-fixture default in ``bench`` and
    ``DEFAULT_EPS`` in ``certify``.
    """

    eps: float | None = None
    max_deflations: int = DEFAULT_MAX_DEFLATIONS
    complex_arithmetic: bool = False
    out: str | None = None
    json_output: bool = False
    seed: int | None = None
    inflation_factor: float = INFLATION_FACTOR
    inflation_rounds: int = INFLATION_ROUNDS
    workers: int = BENCH_WORKERS
    include_quarantined: bool = False
    planted: int = 0

    def run_kwargs(self) -> dict[str, Any]:
        return {
            "max_deflations": self.max_deflations,
            "complex_arithmetic": self.complex_arithmetic,
            "inflation_factor": self.inflation_factor,
            "inflation_rounds": self.inflation_rounds,
            "raise_on_failure": False,
        }


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _write_output(text: str, flags: RunFlags) -> None:
    if flags.out:
        Path(flags.out).write_text(text + "\n", encoding="utf-8")
        logger.info("Report written to %s", flags.out)
    if flags.json_output:
        print(text)


def cmd_certify(system_file: str, start_file: str, flags: RunFlags) -> int:
    """Certify one system/start pair; returns the process exit code."""
    name = Path(system_file).stem
    eps = flags.eps if flags.eps is not None else DEFAULT_EPS
    show_header(f"certify {name}")

    try:
        system = parse_system(_read_text(system_file))
        start = parse_start(_read_text(start_file))
    except UsageError as exc:
        logger.error("[ERROR] %s", exc)
        return EXIT_USAGE

    try:
        result = viss(system, start, eps, **flags.run_kwargs())
    except DeflationLimitError as exc:
        logger.error("[ERROR] %s", exc)
        report = build_report(None, name, n=system.nvars, eps=eps, coranks=exc.coranks, error=str(exc))
        _write_output(json.dumps(report, indent=2), flags)
        return EXIT_DEFLATION_CAP
    except UsageError as exc:
        logger.error("[ERROR] %s", exc)
        return EXIT_USAGE
    except VissError as exc:
        logger.error("[ERROR] %s", exc)
        report = build_report(None, name, n=system.nvars, eps=eps, error=str(exc))
        _write_output(json.dumps(report, indent=2), flags)
        return EXIT_NOT_CERTIFIED

    show_certify_summary(result)
    if result.certified and not consequence_check(result):
        logger.warning("[WARNING] consequence check failed on the certified boxes")
    _write_output(json.dumps(build_report(result, name), indent=2), flags)
    return EXIT_CERTIFIED if result.certified else EXIT_NOT_CERTIFIED


def _row(
    name: str,
    n: int | None,
    mu: int | None,
    expected: Sequence[int] | None,
    eps: float,
) -> dict[str, Any]:
    return {
        "fixture": name,
        "n": n,
        "mu": mu,
        "eps": eps,
        "expected_coranks": list(expected) if expected is not None else None,
        "coranks": None,
        "coranks_match": None,
        "certified": False,
        "size": None,
        "sigma_min_before": None,
        "sigma_min_after": None,
        "x_width": None,
        "b_width": None,
        "runtime_ms": None,
        "error": "",
    }


def _fill_from_result(row: dict[str, Any], result: VissResult) -> None:
    row.update(
        {
            "coranks": list(result.corank_sequence),
            "certified": result.certified,
            "size": result.system_size,
            "sigma_min_before": result.sigma_min_before,
            "sigma_min_after": result.sigma_min_after,
            "x_width": result.x_width(),
            "b_width": result.b_width(),
            "runtime_ms": round(result.runtime_ms, 3),
        }
    )
    if not result.certified:
        row["error"] = result.certificate.reason


def _run_viss(row: dict[str, Any], system: PolySystem, start: Sequence[Scalar], flags: RunFlags) -> None:
    try:
        result = viss(system, list(start), row["eps"], **flags.run_kwargs())
    except DeflationLimitError as exc:
        row["coranks"] = exc.coranks
        row["error"] = str(exc)
        return
    except VerificationFailedError as exc:
        if exc.result is not None:
            _fill_from_result(row, exc.result)
        row["error"] = str(exc)
        return
    _fill_from_result(row, result)


@timed
def run_fixture(spec: FixtureSpec, flags: RunFlags) -> dict[str, Any]:
    """One benchmark row; failures are recorded in the row, never raised."""
    eps = flags.eps if flags.eps is not None else spec.eps
    row = _row(spec.name, spec.n, spec.mu, spec.expected_coranks, eps)
    if spec.quarantined:
        row["error"] = f"quarantined: {spec.reason}"
        return row
    try:
        if spec.kind == "breadth_one":
            check = cross_check_with_viss(eps)
            row.update(
                {
                    "certified": check.fixture_certificate.certified,
                    "size": check.fixture_size,
                    "sigma_min_after": check.fixture_certificate.sigma_min_final,
                    "x_width": check.fixture_x_width,
                    "error": check.error,
                }
            )
            if check.viss_result is not None:
                row["coranks"] = list(check.viss_result.corank_sequence)
                row["sigma_min_before"] = check.viss_result.sigma_min_before
        else:
            system, start = load_fixture(spec)
            _run_viss(row, system, start, flags)
    except VissError as exc:
        logger.error("[ERROR] %s: %s", spec.name, exc)
        row["error"] = str(exc)
    if row["expected_coranks"] is not None and row["coranks"] is not None:
        row["coranks_match"] = row["coranks"] == row["expected_coranks"]
    return row


def run_planted(planted: PlantedSystem, flags: RunFlags) -> dict[str, Any]:
    eps = flags.eps if flags.eps is not None else DEFAULT_EPS
    row = _row(planted.name, planted.system.nvars, 1, (0,), eps)
    _run_viss(row, planted.system, planted.start, flags)
    row["coranks_match"] = row["coranks"] == [0]
    return row


def _crashed_row(name: str, exc: Exception, flags: RunFlags) -> dict[str, Any]:
    logger.error("[ERROR] fixture %s crashed: %s", name, exc)
    row = _row(name, None, None, None, flags.eps if flags.eps is not None else DEFAULT_EPS)
    row["error"] = f"{type(exc).__name__}: {exc}"
    return row


def _run_all(tasks: dict[str, Any], flags: RunFlags) -> dict[str, dict[str, Any]]:
    rows: dict[str, dict[str, Any]] = {}
    if not ENABLE_PARALLEL_BENCH or flags.workers <= 1 or len(tasks) <= 1:
        for name, task in tasks.items():
            try:
                rows[name] = task()
            except Exception as exc:  # noqa: BLE001
                rows[name] = _crashed_row(name, exc, flags)
        return rows

    logger.info("Running %d fixture(s) on %d workers...", len(tasks), flags.workers)
    with ThreadPoolExecutor(max_workers=flags.workers) as executor:
        future_to_name = {executor.submit(task): name for name, task in tasks.items()}
        for future in as_completed(future_to_name):
            name = future_to_name[future]
            try:
                rows[name] = future.result()
            except Exception as exc:  # noqa: BLE001
                rows[name] = _crashed_row(name, exc, flags)
            logger.debug("Fixture %s done (certified=%s)", name, rows[name]["certified"])
    return rows


def cmd_bench(fixtures: Sequence[str] | None, flags: RunFlags) -> int:
    """Run the fixture registry and print a table of the results.

    Returns 0 when every runnable fixture certified, 3 otherwise, 2 on
    unknown fixture names.
    """
    show_header("bench")
    try:
        if fixtures:
            specs = [get_fixture(name) for name in fixtures]
        else:
            specs = list_fixtures(include_quarantined=flags.include_quarantined)
    except UsageError as exc:
        logger.error("[ERROR] %s", exc)
        return EXIT_USAGE

    tasks: dict[str, Any] = {spec.name: (lambda spec=spec: run_fixture(spec, flags)) for spec in specs}
    if flags.planted:
        seed = flags.seed if flags.seed is not None else 0
        for planted in planted_systems(flags.planted, seed):
            tasks[planted.name] = lambda planted=planted: run_planted(planted, flags)

    rows = _run_all(tasks, flags)
    ordered = [rows[name] for name in tasks]
    table = pd.DataFrame(ordered)

    show_bench_table(table)
    show_quarantined([spec for spec in specs if spec.quarantined])

    jsonl_path = flags.out or BENCH_JSONL_FILE
    with open(jsonl_path, "w", encoding="utf-8") as handle:
        for row in ordered:
            handle.write(json.dumps(row) + "\n")
    logger.info("Results written to %s", jsonl_path)
    if flags.json_output:
        print(table.to_json(orient="records", indent=2))

    runnable = [row for row in ordered if not str(row.get("error", "")).startswith("quarantined")]
    return EXIT_CERTIFIED if all(row.get("certified") for row in runnable) else EXIT_NOT_CERTIFIED
