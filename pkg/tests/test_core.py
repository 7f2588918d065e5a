"""Tests for configuration helpers, validation and metrics."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor

import pytest

from src.core.config_validator import validate_run_config
from src.core.constants import _get_bool_env, _get_float_env, _get_int_env
from src.core.exceptions import DeflationLimitError, ParseError, UsageError, VissError
from src.core.metrics import MetricsCollector, timed


@pytest.mark.parametrize(
    "value, expected",
    [("true", True), ("1", True), (" Yes ", True), ("on", True), ("false", False), ("0", False)],
)
def test_get_bool_env(monkeypatch: pytest.MonkeyPatch, value: str, expected: bool) -> None:
    monkeypatch.setenv("VISS_TEST_FLAG", value)

    assert _get_bool_env("VISS_TEST_FLAG", not expected) is expected


def test_env_defaults(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.delenv("VISS_TEST_VALUE", raising=False)
    assert _get_bool_env("VISS_TEST_VALUE", True) is True
    assert _get_float_env("VISS_TEST_VALUE", 0.25) == 0.25
    assert _get_int_env("VISS_TEST_VALUE", 7) == 7

    monkeypatch.setenv("VISS_TEST_VALUE", "")
    assert _get_float_env("VISS_TEST_VALUE", 0.25) == 0.25

    monkeypatch.setenv("VISS_TEST_VALUE", "12")
    assert _get_int_env("VISS_TEST_VALUE", 7) == 12
    assert _get_float_env("VISS_TEST_VALUE", 0.25) == 12.0


def test_validate_run_config_accepts_defaults() -> None:
    assert validate_run_config(1e-4, 10, 1.1, 15)


@pytest.mark.parametrize(
    "eps, max_deflations, factor, rounds, fragment",
    [
        (0.0, 10, 1.1, 15, "eps"),
        (float("nan"), 10, 1.1, 15, "eps"),
        (1e-4, -1, 1.1, 15, "max-deflations"),
        (1e-4, 10, 0.9, 15, "inflation-factor"),
        (1e-4, 10, 1.1, 0, "inflation-rounds"),
    ],
)
def test_validate_run_config_rejects(
    caplog: pytest.LogCaptureFixture,
    eps: float,
    max_deflations: int,
    factor: float,
    rounds: int,
    fragment: str,
) -> None:
    with caplog.at_level(logging.ERROR, logger="viss"):
        assert not validate_run_config(eps, max_deflations, factor, rounds)

    assert fragment in caplog.text


def test_exception_hierarchy() -> None:
    error = ParseError("bad token", 3, 7)

    assert isinstance(error, UsageError)
    assert isinstance(error, VissError)
    assert (error.line, error.column) == (3, 7)
    assert "3" in str(error) and "7" in str(error)


def test_deflation_limit_error_keeps_coranks() -> None:
    error = DeflationLimitError("cap", [2, 2, 1])

    assert error.coranks == [2, 2, 1]
    assert error.last_corank == 1


def test_timed_records_success_and_failure() -> None:
    @timed
    def square(x: float) -> float:
        return x * x

    @timed
    def explode() -> None:
        raise ValueError("boom")

    assert square(3.0) == 9.0
    with pytest.raises(ValueError):
        explode()

    collector = MetricsCollector()
    assert collector.last("square").success
    failed = collector.last("explode")
    assert failed is not None and not failed.success
    assert failed.error_message == "boom"

    summary = collector.get_summary()
    assert summary["total_calls"] == 2
    assert summary["total_errors"] == 1
    assert summary["functions"]["square"]["calls"] == 1


def test_metrics_collector_is_singleton() -> None:
    MetricsCollector().increment("rounds", 3)

    assert MetricsCollector() is MetricsCollector()
    assert MetricsCollector()._counters["rounds"] == 3
    MetricsCollector().reset()
    assert MetricsCollector().get_summary() == {"total_calls": 0, "functions": {}}


def test_last_sees_metrics_from_other_threads() -> None:
    @timed
    def cube(x: float) -> float:
        return x**3

    with ThreadPoolExecutor(max_workers=1) as pool:
        assert pool.submit(cube, 2.0).result() == 8.0

    metric = MetricsCollector().last("cube")
    assert metric is not None and metric.success
