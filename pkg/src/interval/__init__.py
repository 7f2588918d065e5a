"""Rigorous interval arithmetic."""

from src.interval.arithmetic import (
    Box,
    CInterval,
    Interval,
    IntervalLike,
    IntervalMatrix,
    interval_arith,
    subset_interior,
    to_interval,
)
from src.interval.enclosure import enclose_poly

__all__ = [
    "Box",
    "CInterval",
    "Interval",
    "IntervalLike",
    "IntervalMatrix",
    "enclose_poly",
    "interval_arith",
    "subset_interior",
    "to_interval",
]
