"""Benchmark fixtures: registry, shipped data files and end-to-end runs."""

from __future__ import annotations

import pytest

from src.core.exceptions import UsageError
from src.fixtures import FIXTURES, get_fixture, list_fixtures, load_fixture, planted_systems
from src.fixtures.registry import BREADTH_ONE_FIXTURE
from src.viss import consequence_check, viss

FILE_FIXTURES = [spec for spec in list_fixtures() if spec.kind == "viss"]


def test_quarantined_entries_have_reasons() -> None:
    quarantined = [spec for spec in FIXTURES if spec.quarantined]

    assert {spec.name for spec in quarantined} == {"dz3", "caprasse", "cyclic9", "lizhi12", "ojika4"}
    assert all(spec.reason for spec in quarantined)
    assert not any(spec in list_fixtures() for spec in quarantined)
    assert len(list_fixtures(include_quarantined=True)) == len(FIXTURES)


def test_get_fixture() -> None:
    assert get_fixture("DZ1").eps == 0.005
    assert get_fixture(BREADTH_ONE_FIXTURE).kind == "breadth_one"
    with pytest.raises(UsageError, match="unknown fixture"):
        get_fixture("dz9")


def test_quarantined_fixture_cannot_be_loaded() -> None:
    with pytest.raises(UsageError):
        load_fixture(get_fixture("dz3"))


@pytest.mark.parametrize("spec", FILE_FIXTURES, ids=lambda spec: spec.name)
def test_fixture_files_parse(spec) -> None:  # type: ignore[no-untyped-def]
    system, start = load_fixture(spec)

    assert system.nvars == spec.n
    assert system.is_square()
    assert len(start) == spec.n


def test_planted_systems_are_reproducible() -> None:
    first = planted_systems(5, seed=3)
    second = planted_systems(5, seed=3)

    assert [p.system for p in first] == [p.system for p in second]
    for planted in first:
        assert planted.system.is_square()
        assert max(abs(v) for v in planted.system.evaluate(planted.root)) == 0.0


@pytest.mark.slow
@pytest.mark.parametrize("spec", FILE_FIXTURES, ids=lambda spec: spec.name)
def test_fixture_certifies_with_expected_coranks(spec) -> None:  # type: ignore[no-untyped-def]
    system, start = load_fixture(spec)

    result = viss(system, start, spec.eps)

    assert result.certified
    assert result.corank_sequence == spec.expected_coranks
    assert max(e.width for e in result.x_box) <= 1e-8
    assert result.b_width() <= 1e-8
    assert consequence_check(result)
