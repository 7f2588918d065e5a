"""
Deflation with smoothing parameters.

The perturbed system is F~(x, b) = F(x) - sum_j X_j b_j, where column i of
X_j is (1/j!) x_{C_j(i)}^j placed in equation K_j(i). The augmented system
G^(s) is always rebuilt from F~ as a chain of directional-derivative blocks:

    G^(0) = F~,   G^(j) = [G^(j-1); (dG^(j-1)/dvars_j) v_j]

so adding a new perturbation block propagates into every derivative row.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Optional, Sequence

import numpy as np

from src.core.constants import LAMBDA_PREFIX, SMOOTHING_PREFIX
from src.core.exceptions import UsageError, VissError
from src.core.logger import logger
from src.deflation.layout import VariableBlock, VariableLayout
from src.linalg import (
    SelectionSets,
    least_squares,
    numerical_rank,
    select_columns,
    select_rows,
)
from src.poly.polynomial import Polynomial, PolySystem, factorial_weight, jacobian_apply

# One entry per differentiation variable: None is the constant 1, a string is
# the name of the lambda symbol sitting at that position.
Template = tuple[Optional[str], ...]


@dataclass(frozen=True)
class PerturbationBlock:
    order: int
    C: tuple[int, ...]
    K: tuple[int, ...]
    b_names: tuple[str, ...]


@dataclass(frozen=True)
class PerturbationColumn:
    row: int
    monomial: Polynomial


def build_perturbation_columns(
    s: int, C: Sequence[int], K: Sequence[int], nvars: int
) -> list[PerturbationColumn]:
    """Columns of X_s: (1/s!) x_{C(i)}^s in equation row K(i) (1-based)."""
    if len(C) != len(K):
        raise UsageError(f"|C|={len(C)} differs from |K|={len(K)}")
    if s < 0:
        raise UsageError(f"perturbation order must be >= 0 (got {s})")
    weight = factorial_weight(s)
    columns = []
    for c, k in zip(C, K):
        if not 1 <= c <= nvars:
            raise UsageError(f"column index {c} out of range 1..{nvars}")
        exponent = [0] * nvars
        exponent[c - 1] = s
        columns.append(PerturbationColumn(row=k, monomial=Polynomial({tuple(exponent): weight}, nvars)))
    return columns


def build_f_tilde(
    F: PolySystem,
    perturbations: Iterable[PerturbationBlock],
    var_names: Sequence[str],
) -> PolySystem:
    """F - sum_j X_j b_j expressed in ``var_names`` (which must start with F's variables)."""
    var_names = tuple(var_names)
    nvars = len(var_names)
    polys = list(F.embed(var_names).polys)
    for block in perturbations:
        columns = build_perturbation_columns(block.order, block.C, block.K, nvars)
        for column, b_name in zip(columns, block.b_names):
            if not 1 <= column.row <= len(polys):
                raise UsageError(f"row index {column.row} out of range 1..{len(polys)}")
            b = Polynomial.variable(var_names.index(b_name), nvars)
            polys[column.row - 1] = polys[column.row - 1] - column.monomial * b
    return PolySystem(tuple(polys), var_names)


def template_polynomials(template: Template, layout: VariableLayout) -> list[Polynomial]:
    nvars = layout.total
    one = Polynomial.constant(1.0, nvars)
    return [one if entry is None else Polynomial.variable(layout.index(entry), nvars) for entry in template]


def build_chain(
    F: PolySystem,
    perturbations: Sequence[PerturbationBlock],
    layout: VariableLayout,
    templates: Sequence[Template],
) -> PolySystem:
    G = build_f_tilde(F, perturbations, layout.names)
    for step, template in enumerate(templates, start=1):
        variables = layout.differentiation_indices(step)
        if len(variables) != len(template):
            raise UsageError(
                f"template of step {step} has {len(template)} entries, "
                f"system has {len(variables)} differentiation variables"
            )
        rows = jacobian_apply(G, variables, template_polynomials(template, layout))
        G = G.extend(rows.polys)
    return G


def _fresh_names(prefix: str, count: int, taken: Iterable[str]) -> tuple[str, ...]:
    used = set(taken)
    names: list[str] = []
    index = 1
    while len(names) < count:
        candidate = f"{prefix}{index}"
        if candidate not in used:
            names.append(candidate)
            used.add(candidate)
        index += 1
    return tuple(names)


@dataclass(frozen=True, eq=False)
class DeflationState:
    """Immutable snapshot of the augmented system after ``s`` deflation steps."""

    F: PolySystem
    G: PolySystem
    layout: VariableLayout
    y_tilde: np.ndarray
    selections: tuple[SelectionSets, ...] = ()
    coranks: tuple[int, ...] = ()
    perturbations: tuple[PerturbationBlock, ...] = ()
    templates: tuple[Template, ...] = field(default=())

    def __post_init__(self) -> None:
        y = np.array(self.y_tilde, copy=True)
        y.setflags(write=False)
        object.__setattr__(self, "y_tilde", y)
        if y.shape != (self.layout.total,):
            raise UsageError(
                f"approximate solution has {y.shape[0]} entries, layout has {self.layout.total}"
            )

    @property
    def s(self) -> int:
        return len(self.templates)

    @property
    def n(self) -> int:
        return self.layout.n

    @property
    def m(self) -> int:
        return len(self.G.polys)

    def is_square(self) -> bool:
        return len(self.G.polys) == self.layout.total

    @property
    def x_tilde(self) -> np.ndarray:
        return self.y_tilde[: self.n]

    @property
    def b_names(self) -> tuple[str, ...]:
        return tuple(name for block in self.layout.blocks_of("b") for name in block.names)

    @property
    def lambda_names(self) -> tuple[str, ...]:
        return tuple(name for block in self.layout.blocks_of("lambda") for name in block.names)

    @property
    def F_tilde(self) -> PolySystem:
        """The perturbed input system in (x, b) only."""
        return build_f_tilde(self.F, self.perturbations, self.F.var_names + self.b_names)

    def jacobian_at(self) -> np.ndarray:
        return self.G.jacobian_at(self.y_tilde)


def initial_state(
    F: PolySystem, x_tilde: Sequence[complex | float], complex_arithmetic: bool = False
) -> DeflationState:
    if not F.is_square():
        raise UsageError(f"system must be square (got {F.arity} equations, {F.nvars} variables)")
    if len(x_tilde) != F.nvars:
        raise UsageError(f"start point has {len(x_tilde)} entries, system has {F.nvars} variables")
    values = np.asarray(x_tilde)
    use_complex = complex_arithmetic or np.iscomplexobj(values) or not F.is_real()
    values = values.astype(complex if use_complex else float)
    if not np.all(np.isfinite(values)):
        raise UsageError("start point has non-finite entries")
    return DeflationState(F=F, G=F, layout=VariableLayout.from_x(F.var_names), y_tilde=values)


def corank(state: DeflationState, eps: float) -> int:
    """m - numerical rank of the Jacobian of G at the current approximation."""
    rank, _ = numerical_rank(state.jacobian_at(), eps)
    return state.layout.total - rank


def perturb(state: DeflationState, C: Sequence[int], K: Sequence[int]) -> DeflationState:
    """Add the order-s smoothing block -X_s b_s and rebuild every derivative row.

    The returned state carries the new b unknowns (initialized to 0) but no
    new equations yet; ``deflate_step`` completes it.
    """
    if not C:
        raise UsageError("perturb requires a non-empty selection")
    order = state.s
    b_names = _fresh_names(SMOOTHING_PREFIX, len(C), state.layout.names)
    layout = state.layout.append(VariableBlock("b", order + 1, b_names))
    perturbations = state.perturbations + (PerturbationBlock(order, tuple(C), tuple(K), b_names),)
    G = build_chain(state.F, perturbations, layout, state.templates)
    y = np.concatenate([state.y_tilde, np.zeros(len(C), dtype=state.y_tilde.dtype)])
    return replace(state, G=G, layout=layout, y_tilde=y, perturbations=perturbations)


def deflate_step(state: DeflationState, eps: float, d: int | None = None) -> DeflationState:
    """One deflation: select C/K, perturb, append (dG/dy) v_{s+1} and double the size."""
    J = state.jacobian_at()
    m = state.layout.total
    n = state.n
    if d is None:
        rank, _ = numerical_rank(J, eps)
        d = m - rank
    if d < 1:
        raise UsageError("deflate_step called on a regular system")

    previous = state.selections[-1] if state.selections else None
    C = select_columns(J, d, eps, previous, n_x=n)
    keep = [j for j in range(m) if j + 1 not in C]
    K = select_rows(J[:, keep], d, eps, previous, row_offset=m - n, n_x=n)
    selection = SelectionSets(C, K, order=state.s)

    lambda_names = _fresh_names(LAMBDA_PREFIX, m - d, state.layout.names)
    names = iter(lambda_names)
    template: Template = tuple(None if pos + 1 in C else next(names) for pos in range(m))

    rhs = -J[:, [c - 1 for c in C]].sum(axis=1)
    lam = least_squares(J[:, keep], rhs)

    perturbed = perturb(state, C, K)
    layout = perturbed.layout.insert_before_last(VariableBlock("lambda", state.s + 1, lambda_names))
    templates = state.templates + (template,)
    G = build_chain(state.F, perturbed.perturbations, layout, templates)
    dtype = np.result_type(state.y_tilde, lam)
    y = np.concatenate([state.y_tilde, lam, np.zeros(d)]).astype(dtype)

    new_state = DeflationState(
        F=state.F,
        G=G,
        layout=layout,
        y_tilde=y,
        selections=state.selections + (selection,),
        coranks=state.coranks + (d,),
        perturbations=perturbed.perturbations,
        templates=templates,
    )
    if not new_state.is_square() or new_state.m != 2 * m:
        raise VissError(
            f"deflation step produced {new_state.m} equations for {layout.total} unknowns "
            f"(expected {2 * m})"
        )
    logger.info(
        "Deflation step %d: corank %d, C=%s, K=%s, size %d -> %d",
        new_state.s,
        d,
        list(C),
        list(K),
        m,
        new_state.m,
    )
    return new_state


def unsmoothed_corank(state: DeflationState, eps: float) -> int:
    """Corank of the Jacobian with every smoothing column removed (rectangular)."""
    J = state.jacobian_at()
    b_columns = set(state.layout.indices("b"))
    keep = [j for j in range(J.shape[1]) if j not in b_columns]
    rank, _ = numerical_rank(J[:, keep], eps)
    return len(keep) - rank


def unperturbed_chain(state: DeflationState) -> PolySystem:
    """The deflation chain of the same templates without any smoothing terms."""
    return build_chain(state.F, (), state.layout, state.templates)
