"""End-to-end tests of the certification pipeline."""

from __future__ import annotations

import dataclasses

import numpy as np
import pytest

from src.core.exceptions import DeflationLimitError, UsageError, VerificationFailedError
from src.core.metrics import MetricsCollector
from src.fixtures import get_fixture, load_fixture, planted_systems
from src.poly import PolySystem
from src.sysio import parse_system
from src.viss import consequence_check, viss
from tests.conftest import DZ1_START, DZ2_START


def test_regular_system_needs_no_deflation(regular_system: PolySystem) -> None:
    result = viss(regular_system, [0.6, 0.8])

    assert result.certified
    assert result.deflation_count == 0
    assert result.corank_sequence == (0,)
    assert result.system_size == 2
    assert len(result.lambda_box) == 0 and len(result.b_box) == 0
    assert consequence_check(result)


def test_dz1(dz1: PolySystem) -> None:
    result = viss(dz1, DZ1_START, eps=0.005)

    assert result.certified
    assert result.corank_sequence == (4, 4, 0)
    assert result.system_size == 16
    assert result.x_bound() <= 1e-300
    assert result.b_bound() <= 1e-300
    assert result.sigma_min_before < 1e-5
    assert result.sigma_min_after > 1e-2
    assert consequence_check(result)


def test_dz1_runtime_is_recorded(dz1: PolySystem) -> None:
    result = viss(dz1, DZ1_START, eps=0.005)

    metric = MetricsCollector().last("viss")
    assert metric is not None and metric.success
    assert result.runtime_ms > 0.0


def test_dz2(dz2: PolySystem) -> None:
    result = viss(dz2, DZ2_START, eps=1e-4)

    assert result.certified
    assert result.corank_sequence == (2, 2, 1, 0)
    assert result.system_size == 24
    assert result.lambda_names[:5] == ("lam1", "lam2", "lam3", "lam4", "lam5")
    lambda2 = [result.lambda_inclusion(f"lam{i}").mid for i in range(2, 6)]
    lambda3 = [result.lambda_inclusion(f"lam{i}").mid for i in range(6, 17)]
    assert np.allclose(lambda2, [0, -16, 0, 0], atol=1e-8)
    assert np.allclose(lambda3, [-2, 0, 0, 0, -16, 0, 0, -16, 0, 0, -42], atol=1e-8)
    assert result.x_box[2].mid == pytest.approx(-1.0, abs=1e-10)
    assert max(e.width for e in result.x_box) <= 1e-10
    assert result.b_bound() <= 1e-10
    assert consequence_check(result)


def test_dz2_selections_take_smallest_indices(dz2: PolySystem) -> None:
    result = viss(dz2, DZ2_START, eps=1e-4)

    assert [sel.C for sel in result.selections] == [(1, 2), (1, 2), (1,)]


def test_dz2_from_coarse_start(dz2: PolySystem) -> None:
    result = viss(dz2, [1e-3, -6e-4, -0.9992], eps=0.005)

    assert result.certified
    assert result.corank_sequence == (2, 2, 1, 0)
    assert result.x_box[2].mid == pytest.approx(-1.0, abs=1e-10)
    assert max(abs(result.x_box[0].mid), abs(result.x_box[1].mid)) <= 1e-10
    assert consequence_check(result)


@pytest.mark.parametrize("name", ["rugr09", "dz2", "ojika3"])
def test_certifies_from_shipped_start(name: str) -> None:
    spec = get_fixture(name)
    system, start = load_fixture(spec)

    result = viss(system, start, spec.eps)

    assert result.certified
    assert result.corank_sequence == spec.expected_coranks


def test_rugr09_converges_to_origin(rugr09: PolySystem) -> None:
    result = viss(rugr09, [1e-6, -6e-7])

    assert result.certified
    assert result.corank_sequence == (1, 1, 1, 0)
    assert result.x_bound() <= 1e-10
    assert result.b_bound() <= 1e-10


def test_consequence_check_rejects_shifted_box(dz2: PolySystem) -> None:
    result = viss(dz2, DZ2_START, eps=1e-4)
    tampered = dataclasses.replace(result, x_box=result.x_box.shifted([1.0] * dz2.nvars))

    assert consequence_check(result)
    assert not consequence_check(tampered)


def test_repeated_runs_are_identical(dz2: PolySystem) -> None:
    first = viss(dz2, DZ2_START, eps=1e-4)
    second = viss(dz2, DZ2_START, eps=1e-4)

    assert first.corank_sequence == second.corank_sequence
    assert first.selections == second.selections
    for box_a, box_b in [
        (first.x_box, second.x_box),
        (first.lambda_box, second.lambda_box),
        (first.b_box, second.b_box),
    ]:
        assert box_a.mid() == box_b.mid()
        assert box_a.rad() == box_b.rad()


def test_deflation_cap(dz2: PolySystem) -> None:
    with pytest.raises(DeflationLimitError) as excinfo:
        viss(dz2, DZ2_START, eps=1e-4, max_deflations=1)

    assert excinfo.value.coranks == [2, 2]
    assert excinfo.value.last_corank == 2


def test_failed_verification_carries_result() -> None:
    # Double root at the origin, but eps is too tight to see the rank drop.
    F = parse_system("vars x y\nx^2\ny\n")

    with pytest.raises(VerificationFailedError) as excinfo:
        viss(F, [1e-3, 0.0], eps=1e-12)

    assert excinfo.value.result is not None
    assert not excinfo.value.result.certified
    assert excinfo.value.result.corank_sequence == (0,)


def test_no_raise_returns_uncertified_result() -> None:
    F = parse_system("vars x y\nx^2\ny\n")

    result = viss(F, [1e-3, 0.0], eps=1e-12, raise_on_failure=False)

    assert not result.certified
    assert not consequence_check(result)


@pytest.mark.parametrize("eps", [0.0, -1e-4, float("inf")])
def test_invalid_eps(regular_system: PolySystem, eps: float) -> None:
    with pytest.raises(UsageError):
        viss(regular_system, [0.6, 0.8], eps=eps)


def test_complex_arithmetic_flag(regular_system: PolySystem) -> None:
    result = viss(regular_system, [0.6, 0.8], complex_arithmetic=True)

    assert result.certified
    assert result.x_box.is_complex()


@pytest.mark.slow
def test_planted_roots_are_always_enclosed() -> None:
    """No certificate may exclude the planted root."""
    certified = 0
    for planted in planted_systems(100, seed=7):
        result = viss(planted.system, list(planted.start), raise_on_failure=False)
        if not result.certified:
            continue
        certified += 1
        for entry, value in zip(result.x_box, planted.root):
            assert value in entry, planted.name
    assert certified >= 90
