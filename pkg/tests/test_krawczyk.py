"""Tests for the Krawczyk existence test and epsilon-inflation."""

from __future__ import annotations

import numpy as np
import pytest

from src.core.exceptions import UsageError
from src.interval import Box, Interval
from src.linalg import approximate_inverse
from src.poly import PolySystem
from src.sysio import parse_system
from src.verification import jacobian_enclosure, krawczyk_test, newton_refine, verify_root


def test_regular_root_is_certified(regular_system: PolySystem) -> None:
    certificate = verify_root(regular_system, [0.61, 0.79])

    assert certificate.certified
    inclusion = certificate.inclusion()
    assert 0.6 in inclusion[0]
    assert 0.8 in inclusion[1]
    assert max(e.width for e in inclusion) < 1e-12


def test_krawczyk_step_on_explicit_box(regular_system: PolySystem) -> None:
    center = [0.6, 0.8]
    R = approximate_inverse(regular_system.jacobian_at(center))
    X = Box.symmetric([1e-8, 1e-8])

    step = krawczyk_test(regular_system, center, X, R)

    assert step.certified
    assert step.K is not None


def test_jacobian_enclosure_contains_point_jacobian(regular_system: PolySystem) -> None:
    center = [0.6, 0.8]
    M = jacobian_enclosure(regular_system, center, Box.symmetric([0.1, 0.1]))
    J = regular_system.jacobian_at(center)

    assert M.shape == (2, 2)
    for i in range(2):
        for j in range(2):
            assert J[i, j] in M[i, j]


def test_singular_root_is_never_certified() -> None:
    F = parse_system("vars x y\nx^2\ny\n")

    certificate = verify_root(F, [1e-3, 0.0])

    assert not certificate.certified
    assert certificate.reason


def test_singular_system_random_starts(rng: np.random.Generator) -> None:
    F = parse_system("vars x y\nx^2 - 2*x*y + y^2\nx - y\n")
    for _ in range(20):
        start = rng.uniform(-0.01, 0.01, size=2)
        assert not verify_root(F, start).certified


def test_newton_refine_relative_stop() -> None:
    F = parse_system("vars x\nx^2 - 4\n")

    y, steps = newton_refine(F, np.array([3.0]))

    assert y[0] == pytest.approx(2.0, abs=1e-15)
    assert 1 <= steps <= 20


def test_complex_root_is_certified() -> None:
    F = parse_system("vars z\nz^2 + 1\n")

    certificate = verify_root(F, np.array([0.1 + 0.9j]))

    assert certificate.certified
    assert 1j in certificate.inclusion()[0]


def test_shape_errors(regular_system: PolySystem) -> None:
    with pytest.raises(UsageError):
        verify_root(regular_system, [0.6])
    with pytest.raises(UsageError):
        krawczyk_test(regular_system, [0.6, 0.8], Box([Interval(0.0, 0.0)] * 2), np.eye(3))
    with pytest.raises(UsageError):
        verify_root(parse_system("vars x y\nx\n"), [0.0, 0.0])
