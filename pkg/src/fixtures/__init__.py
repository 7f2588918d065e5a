"""Benchmark fixtures, planted-root systems and the breadth-one comparison system."""

from src.fixtures.breadth_one import (
    BreadthOneFixture,
    CrossCheckReport,
    breadth_one_fixture,
    cross_check_with_viss,
    verify_breadth_one_fixture,
)
from src.fixtures.planted import PlantedSystem, planted_system, planted_systems
from src.fixtures.registry import (
    BREADTH_ONE_FIXTURE,
    FIXTURES,
    FixtureSpec,
    get_fixture,
    list_fixtures,
    load_fixture,
)

__all__ = [
    "BREADTH_ONE_FIXTURE",
    "FIXTURES",
    "BreadthOneFixture",
    "CrossCheckReport",
    "FixtureSpec",
    "PlantedSystem",
    "breadth_one_fixture",
    "cross_check_with_viss",
    "get_fixture",
    "list_fixtures",
    "load_fixture",
    "planted_system",
    "planted_systems",
    "verify_breadth_one_fixture",
]
