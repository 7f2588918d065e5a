"""
Benchmark fixture registry.

Each entry points at a ``.sys``/``.start`` pair under ``fixtures/`` and
records the published corank sequence and multiplicity. Entries whose
polynomials or root could not be confirmed against the published corank
sequence are kept as ``quarantined`` with the reason, and are never run
silently.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from src.core.constants import DEFAULT_EPS, FIXTURES_DIR
from src.core.exceptions import UsageError
from src.poly.polynomial import PolySystem, Scalar
from src.sysio.parser import parse_start, parse_system

BREADTH_ONE_FIXTURE = "rugr09-breadth-one"


@dataclass(frozen=True)
class FixtureSpec:
    name: str
    n: int
    mu: int | None
    expected_coranks: tuple[int, ...] | None
    eps: float = DEFAULT_EPS
    system_file: str | None = None
    start_file: str | None = None
    kind: str = "viss"
    quarantined: bool = False
    reason: str = ""

    @property
    def runnable(self) -> bool:
        if self.kind == "breadth_one":
            return True
        return self.system_file is not None and self.start_file is not None


_NOT_CONFIRMED = "transcription and root could not be confirmed against the published corank sequence"

FIXTURES: tuple[FixtureSpec, ...] = (
    FixtureSpec("dz1", 4, 131, (4, 4, 0), 0.005, "dz1.sys", "dz1.start"),
    FixtureSpec("dz2", 3, 16, (2, 2, 1, 0), DEFAULT_EPS, "dz2.sys", "dz2.start"),
    FixtureSpec("dz3", 2, 4, (1, 1, 1, 0), quarantined=True, reason="polynomials are not published"),
    FixtureSpec("cbms1", 3, 11, (3, 0), DEFAULT_EPS, "cbms1.sys", "cbms1.start"),
    FixtureSpec("cbms2", 3, 8, (3, 0), DEFAULT_EPS, "cbms2.sys", "cbms2.start"),
    FixtureSpec("mth191", 3, 4, (2, 0), DEFAULT_EPS, "mth191.sys", "mth191.start"),
    FixtureSpec("kss10", 10, 638, (9, 0), DEFAULT_EPS, "kss10.sys", "kss10.start"),
    FixtureSpec("caprasse", 4, 4, (2, 0), quarantined=True, reason=_NOT_CONFIRMED),
    FixtureSpec("cyclic9", 9, 4, (2, 0), quarantined=True, reason=_NOT_CONFIRMED),
    FixtureSpec("rugr09", 2, 4, (1, 1, 1, 0), DEFAULT_EPS, "rugr09.sys", "rugr09.start"),
    FixtureSpec("lizhi12", 100, 3, (1, 1, 0), quarantined=True, reason=_NOT_CONFIRMED),
    FixtureSpec("ojika1", 2, 3, (1, 1, 0), DEFAULT_EPS, "ojika1.sys", "ojika1.start"),
    FixtureSpec("ojika2", 3, 2, (1, 0), DEFAULT_EPS, "ojika2.sys", "ojika2.start"),
    FixtureSpec("ojika3", 3, 2, (1, 0), DEFAULT_EPS, "ojika3.sys", "ojika3.start"),
    FixtureSpec("ojika4", 3, 3, (1, 1, 0), quarantined=True, reason=_NOT_CONFIRMED),
    FixtureSpec("decker2", 2, 4, (1, 1, 1, 0), DEFAULT_EPS, "decker2.sys", "decker2.start"),
    # expected_coranks here are those of the generic-deflation cross-check.
    FixtureSpec(BREADTH_ONE_FIXTURE, 2, 4, (1, 1, 1, 0), DEFAULT_EPS, kind="breadth_one"),
)


def list_fixtures(include_quarantined: bool = False) -> list[FixtureSpec]:
    return [spec for spec in FIXTURES if include_quarantined or not spec.quarantined]


def get_fixture(name: str) -> FixtureSpec:
    for spec in FIXTURES:
        if spec.name == name.lower():
            return spec
    known = ", ".join(spec.name for spec in FIXTURES)
    raise UsageError(f"unknown fixture {name!r} (known: {known})")


def _read(directory: Path, filename: str) -> str:
    path = directory / filename
    if not path.exists():
        raise UsageError(f"fixture file not found: {path}")
    return path.read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def _load(name: str, directory: str) -> tuple[PolySystem, tuple[Scalar, ...]]:
    spec = get_fixture(name)
    if spec.system_file is None or spec.start_file is None:
        raise UsageError(f"fixture {spec.name!r} has no data files ({spec.reason or spec.kind})")
    base = Path(directory)
    system = parse_system(_read(base, spec.system_file))
    start = tuple(parse_start(_read(base, spec.start_file)))
    return system, start


def load_fixture(spec: FixtureSpec, directory: Path = FIXTURES_DIR) -> tuple[PolySystem, list[Scalar]]:
    """Parsed system and start point of a file-backed fixture."""
    system, start = _load(spec.name, str(directory))
    return system, list(start)
