"""Shared pytest fixtures."""

from __future__ import annotations

import os

# Before any src import: no config.env, no log files from the test run.
os.environ.setdefault("USE_DOTENV", "false")
os.environ.setdefault("VISS_LOG_TO_FILE", "false")

import numpy as np  # noqa: E402
import pytest  # noqa: E402

from src.core.metrics import MetricsCollector  # noqa: E402
from src.poly.polynomial import PolySystem  # noqa: E402
from src.sysio import parse_system  # noqa: E402

DZ1_TEXT = """\
vars x1 x2 x3 x4
x1^4 - x2*x3*x4
x2^4 - x1*x3*x4
x3^4 - x1*x2*x4
x4^4 - x1*x2*x3
"""
DZ1_START = [0.0003445, 0.0009502, 0.0003171, 0.0006948]

DZ2_TEXT = """\
vars x y z
x^4
x^2*y + y^4
z + z^2 - 7*x^3 - 8*x^2
"""
DZ2_START = [1e-6, -6e-7, -0.9999992]


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture()
def dz1() -> PolySystem:
    return parse_system(DZ1_TEXT)


@pytest.fixture()
def dz2() -> PolySystem:
    return parse_system(DZ2_TEXT)


@pytest.fixture()
def rugr09() -> PolySystem:
    return parse_system("vars x1 x2\nx1^2*x2 - x1*x2^2\nx1 - x2^2\n")


@pytest.fixture()
def regular_system() -> PolySystem:
    """Circle and line meeting transversally at (0.6, 0.8)."""
    return parse_system("vars x y\nx^2 + y^2 - 1\n4*x - 3*y\n")


@pytest.fixture(autouse=True)
def _reset_metrics() -> None:
    MetricsCollector().reset()
