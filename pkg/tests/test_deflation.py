"""Tests for the smoothing-parameter deflation chain."""

from __future__ import annotations

import numpy as np
import pytest

from src.core.exceptions import UsageError
from src.deflation import (
    DeflationState,
    VariableBlock,
    VariableLayout,
    build_perturbation_columns,
    corank,
    deflate_step,
    initial_state,
    perturb,
    unperturbed_chain,
    unsmoothed_corank,
)
from src.poly import Polynomial, PolySystem
from src.poly.polynomial import factorial_weight
from src.sysio import parse_system
from tests.conftest import DZ1_START, DZ2_START


def _deflate_fully(F: PolySystem, start: list[float], eps: float) -> list[DeflationState]:
    states = [initial_state(F, start)]
    while corank(states[-1], eps) > 0:
        states.append(deflate_step(states[-1], eps))
        assert len(states) < 8
    return states


def _b_indices(state: DeflationState) -> dict[int, float]:
    return {i: 0.0 for i in state.layout.indices("b")}


def test_perturbation_columns_order_zero() -> None:
    columns = build_perturbation_columns(0, [1, 2], [2, 1], 3)

    assert [c.row for c in columns] == [2, 1]
    assert all(c.monomial == Polynomial.constant(1.0, 3) for c in columns)


def test_perturbation_columns_order_two() -> None:
    (column,) = build_perturbation_columns(2, [1], [1], 3)

    assert column.row == 1
    assert column.monomial == Polynomial({(2, 0, 0): 0.5}, 3)


def test_perturbation_columns_order_three() -> None:
    (column,) = build_perturbation_columns(3, [2], [3], 3)

    assert factorial_weight(3) == 1.0 / 6.0
    assert column.row == 3
    assert column.monomial == Polynomial({(0, 3, 0): factorial_weight(3)}, 3)


def test_perturbation_columns_size_mismatch() -> None:
    with pytest.raises(UsageError):
        build_perturbation_columns(0, [1, 2], [1], 2)


def test_initial_state_rejects_non_square() -> None:
    F = parse_system("vars x y\nx + y\n")

    with pytest.raises(UsageError):
        initial_state(F, [0.0, 0.0])


def test_regular_root_has_corank_zero(regular_system: PolySystem) -> None:
    state = initial_state(regular_system, [0.6, 0.8])

    assert corank(state, 1e-4) == 0


def test_deflate_step_rejects_regular_system(regular_system: PolySystem) -> None:
    with pytest.raises(UsageError):
        deflate_step(initial_state(regular_system, [0.6, 0.8]), 1e-4)


def test_dz1_chain(dz1: PolySystem) -> None:
    states = _deflate_fully(dz1, DZ1_START, 0.005)
    final = states[-1]

    assert final.coranks == (4, 4)
    assert final.m == 16
    assert [sel.C for sel in final.selections] == [(1, 2, 3, 4), (1, 2, 3, 4)]
    assert [sel.K for sel in final.selections] == [(1, 2, 3, 4), (1, 2, 3, 4)]
    expected = parse_system(
        "vars x1 x2 x3 x4 b1 b2 b3 b4 b5 b6 b7 b8\n"
        "x1^4 - x2*x3*x4 - b1 - b5*x1\n"
        "x2^4 - x1*x3*x4 - b2 - b6*x2\n"
        "x3^4 - x1*x2*x4 - b3 - b7*x3\n"
        "x4^4 - x1*x2*x3 - b4 - b8*x4\n"
    )
    assert final.F_tilde == expected


def test_dz1_first_order_layout(dz1: PolySystem) -> None:
    states = _deflate_fully(dz1, DZ1_START, 0.005)

    assert states[1].layout.names == ("x1", "x2", "x3", "x4", "b1", "b2", "b3", "b4")
    assert states[1].templates == ((None, None, None, None),)
    assert states[2].lambda_names == ("lam1", "lam2", "lam3", "lam4")


def test_dz2_chain(dz2: PolySystem) -> None:
    final = _deflate_fully(dz2, DZ2_START, 1e-4)[-1]

    assert final.coranks == (2, 2, 1)
    assert final.m == 24
    assert final.selections[0].C == (1, 2)
    assert final.selections[0].K == (1, 2)
    assert final.selections[1].C == (1, 2)
    assert final.selections[2].C == (1,)
    assert final.b_names == ("b1", "b2", "b3", "b4", "b5")

    (k2,) = final.selections[2].K
    names = ("x", "y", "z", "b1", "b2", "b3", "b4", "b5")
    x, y, z, b1, b2, b3, b4, b5 = (Polynomial.variable(i, 8) for i in range(8))
    polys = [x**4 - b1 - b3 * x, x**2 * y + y**4 - b2 - b4 * y, z + z**2 - 7 * x**3 - 8 * x**2]
    polys[k2 - 1] = polys[k2 - 1] - 0.5 * b5 * x**2
    assert final.F_tilde == PolySystem(tuple(polys), names)


@pytest.mark.parametrize(
    "fixture_name, start, eps",
    [("dz1", DZ1_START, 0.005), ("dz2", DZ2_START, 1e-4), ("rugr09", [1e-6, -6e-7], 1e-4)],
)
def test_chain_invariants(
    fixture_name: str, start: list[float], eps: float, request: pytest.FixtureRequest
) -> None:
    """Squareness, corank monotonicity and nested selections at every order."""
    F = request.getfixturevalue(fixture_name)
    states = _deflate_fully(F, start, eps)

    for state in states:
        assert state.is_square()
        assert state.m == 2**state.s * F.nvars
    coranks = states[-1].coranks
    assert all(later <= earlier for earlier, later in zip(coranks, coranks[1:]))
    selections = states[-1].selections
    assert all(later.is_nested_in(earlier) for earlier, later in zip(selections, selections[1:]))


@pytest.mark.parametrize(
    "fixture_name, start, eps",
    [("dz1", DZ1_START, 0.005), ("dz2", DZ2_START, 1e-4), ("rugr09", [1e-6, -6e-7], 1e-4)],
)
def test_f_tilde_at_zero_smoothing_is_input(
    fixture_name: str, start: list[float], eps: float, request: pytest.FixtureRequest
) -> None:
    F = request.getfixturevalue(fixture_name)
    final = _deflate_fully(F, start, eps)[-1]
    F_tilde = final.F_tilde
    zeros = {i: 0.0 for i in range(F.nvars, F_tilde.nvars)}

    assert F_tilde.substitute(zeros) == F.embed(F_tilde.var_names)


@pytest.mark.parametrize("fixture_name, start", [("dz1", DZ1_START), ("dz2", DZ2_START)])
def test_first_order_identity(
    fixture_name: str, start: list[float], request: pytest.FixtureRequest, rng: np.random.Generator
) -> None:
    """JF(x) v1 - e_K1 b1 equals dF~/dx (x, b) v1 when higher-order b vanish."""
    F = request.getfixturevalue(fixture_name)
    eps = 0.005 if fixture_name == "dz1" else 1e-4
    final = _deflate_fully(F, start, eps)[-1]
    assert final.s >= 2
    F_tilde = final.F_tilde
    n = F.nvars
    template = final.templates[0]
    order_one = final.perturbations[1]

    for _ in range(100):
        x = rng.uniform(-1.0, 1.0, size=n)
        b_values = {}
        for block in final.perturbations:
            for name in block.b_names:
                b_values[name] = float(rng.uniform(-1.0, 1.0)) if block.order <= 1 else 0.0
        lam = {name: float(rng.uniform(-2.0, 2.0)) for name in template if name is not None}
        v1 = np.array([1.0 if entry is None else lam[entry] for entry in template])

        lhs = F.jacobian_at(x) @ v1
        for k, name in zip(order_one.K, order_one.b_names):
            lhs[k - 1] -= b_values[name]
        point = np.concatenate([x, [b_values[name] for name in final.b_names]])
        rhs = F_tilde.jacobian_at(point)[:, :n] @ v1
        scale = 1.0 + np.max(np.abs(lhs))

        assert np.max(np.abs(lhs - rhs)) <= 1e-12 * scale


@pytest.mark.parametrize(
    "fixture_name, root",
    [("dz1", [0.0, 0.0, 0.0, 0.0]), ("dz2", [0.0, 0.0, -1.0]), ("rugr09", [0.0, 0.0])],
)
def test_smoothed_and_unsmoothed_corank_agree_at_root(
    fixture_name: str, root: list[float], request: pytest.FixtureRequest
) -> None:
    F = request.getfixturevalue(fixture_name)
    state = deflate_step(initial_state(F, root), 1e-4)

    assert corank(state, 1e-4) == unsmoothed_corank(state, 1e-4)


@pytest.mark.parametrize("fixture_name, root", [("dz2", [0.0, 0.0, -1.0]), ("rugr09", [0.0, 0.0])])
def test_zero_smoothing_recovers_first_order_chain(
    fixture_name: str, root: list[float], request: pytest.FixtureRequest
) -> None:
    F = request.getfixturevalue(fixture_name)
    state = deflate_step(initial_state(F, root), 1e-4)

    assert state.G.substitute(_b_indices(state)).polys == unperturbed_chain(state).polys


def test_perturb_rebuilds_existing_rows(dz2: PolySystem) -> None:
    state = deflate_step(initial_state(dz2, DZ2_START), 1e-4)
    extended = perturb(state, (1, 2), (1, 2))

    assert extended.layout.names[-2:] == ("b3", "b4")
    assert extended.m == state.m
    # The order-1 smoothing term reaches the derivative rows as well.
    b3 = extended.layout.index("b3")
    assert any(b3 in row.variables_used() for row in extended.G.polys[3:])


def test_perturb_requires_selection(dz2: PolySystem) -> None:
    with pytest.raises(UsageError):
        perturb(initial_state(dz2, DZ2_START), (), ())


def test_layout_differentiation_indices() -> None:
    layout = (
        VariableLayout.from_x(("x", "y"))
        .append(VariableBlock("b", 1, ("b1",)))
        .insert_before_last(VariableBlock("lambda", 1, ("lam1",)))
    )

    assert layout.names == ("x", "y", "lam1", "b1")
    assert layout.differentiation_indices(1) == [0, 1]
    assert layout.differentiation_indices(2) == [0, 1, 2, 3]
    with pytest.raises(UsageError):
        layout.append(VariableBlock("b", 2, ("b1",)))


def test_state_is_immutable(dz2: PolySystem) -> None:
    state = initial_state(dz2, DZ2_START)

    with pytest.raises(ValueError):
        state.y_tilde[0] = 1.0
