"""Deflation with smoothing parameters."""

from src.deflation.layout import VariableBlock, VariableLayout
from src.deflation.steps import (
    DeflationState,
    PerturbationBlock,
    PerturbationColumn,
    build_chain,
    build_f_tilde,
    build_perturbation_columns,
    corank,
    deflate_step,
    initial_state,
    perturb,
    unperturbed_chain,
    unsmoothed_corank,
)

__all__ = [
    "DeflationState",
    "PerturbationBlock",
    "PerturbationColumn",
    "VariableBlock",
    "VariableLayout",
    "build_chain",
    "build_f_tilde",
    "build_perturbation_columns",
    "corank",
    "deflate_step",
    "initial_state",
    "perturb",
    "unperturbed_chain",
    "unsmoothed_corank",
]
