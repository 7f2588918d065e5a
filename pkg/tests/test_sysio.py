"""Tests for system/start parsing and the JSON report."""

from __future__ import annotations

import json

import jsonschema
import numpy as np
import pytest

from src.core.constants import REPORT_SCHEMA_FILE
from src.core.exceptions import ParseError
from src.poly import Polynomial, PolySystem
from src.sysio import (
    build_report,
    emit_report,
    format_system,
    parse_polynomial,
    parse_start,
    parse_system,
)
from src.viss import viss


@pytest.fixture(scope="module")
def schema() -> dict:
    return json.loads(REPORT_SCHEMA_FILE.read_text(encoding="utf-8"))


def test_parse_system_with_comments_and_crlf() -> None:
    text = "# header\r\nvars x y\r\nx^2*y - 3*y  # trailing\r\n\r\n-x + 0.5\r\n"

    system = parse_system(text)

    assert system.var_names == ("x", "y")
    assert system[0] == Polynomial({(2, 1): 1.0, (0, 1): -3.0}, 2)
    assert system[1] == Polynomial({(1, 0): -1.0, (0, 0): 0.5}, 2)


def test_parse_complex_coefficient() -> None:
    p = parse_polynomial("(1.5-2i)*x^2 + (0+1i)", ("x",))

    assert p.terms[(2,)] == complex(1.5, -2.0)
    assert p.terms[(0,)] == 1j


def test_repeated_factors_multiply() -> None:
    assert parse_polynomial("2*x*x*3", ("x",)) == Polynomial({(2,): 6.0}, 1)


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("vars x y\nx + z\n", 2, 5),
        ("vars x\nx^1.5\n", 2, 3),
        ("x + 1\n", 1, 1),
        ("vars x x\nx\n", 1, 1),
        ("vars x\nx y\n", 2, 3),
        ("vars x\nx + $\n", 2, 5),
    ],
)
def test_parse_errors_report_position(text: str, line: int, column: int) -> None:
    with pytest.raises(ParseError) as excinfo:
        parse_system(text)

    assert excinfo.value.line == line
    assert excinfo.value.column == column


def test_empty_system_is_rejected() -> None:
    with pytest.raises(ParseError):
        parse_system("# nothing\n")
    with pytest.raises(ParseError):
        parse_system("vars x\n")


def test_parse_start() -> None:
    assert parse_start("# start\n0.5\n-1e-3\n") == [0.5, -0.001]
    assert parse_start("1\n(0+1i)\n") == [complex(1.0, 0.0), 1j]
    with pytest.raises(ParseError):
        parse_start("0.5\nabc\n")


def test_format_then_parse_reproduces_system(rng: np.random.Generator) -> None:
    for _ in range(500):
        nvars = int(rng.integers(1, 4))
        names = tuple(f"v{i}" for i in range(nvars))
        polys = []
        for _ in range(nvars):
            terms: dict[tuple[int, ...], complex | float] = {}
            for _ in range(int(rng.integers(1, 5))):
                exponent = tuple(int(e) for e in rng.integers(0, 4, size=nvars))
                terms[exponent] = float(rng.normal()) * 10.0 ** int(rng.integers(-20, 20))
            if rng.random() < 0.2:
                terms[(0,) * nvars] = complex(rng.normal(), rng.normal())
            polys.append(Polynomial(terms, nvars))
        system = PolySystem(tuple(polys), names)

        assert parse_system(format_system(system)) == system


def test_report_certified_matches_schema(regular_system: PolySystem, schema: dict) -> None:
    result = viss(regular_system, [0.6, 0.8])

    report = build_report(result, "circle")

    jsonschema.validate(report, schema)
    assert list(report)[:7] == [
        "system",
        "n",
        "certified",
        "deflations",
        "corank_sequence",
        "sigma_min_before",
        "sigma_min_after",
    ]
    assert report["certified"] is True
    assert len(report["x_inclusions"]) == 2
    lo, hi = (float(v) for v in report["x_inclusions"][0])
    assert lo <= 0.6 <= hi
    assert "diagnostics" not in report


def test_report_uncertified_omits_inclusions(schema: dict) -> None:
    F = parse_system("vars x y\nx^2\ny\n")
    result = viss(F, [1e-3, 0.0], eps=1e-12, raise_on_failure=False)

    report = json.loads(emit_report(result, "double"))

    jsonschema.validate(report, schema)
    assert report["certified"] is False
    assert "x_inclusions" not in report
    assert report["diagnostics"]["reason"]


def test_report_without_result(schema: dict) -> None:
    report = build_report(None, "capped", n=3, eps=1e-4, coranks=[2, 2], error="deflation cap")

    jsonschema.validate(report, schema)
    assert report["deflations"] == 1
    assert report["diagnostics"] == {"error": "deflation cap"}
