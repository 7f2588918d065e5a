"""Natural interval extension of sparse polynomials."""

from __future__ import annotations

from typing import MutableMapping

from src.core.exceptions import UsageError
from src.interval.arithmetic import Box, CInterval, Interval, IntervalLike, to_interval
from src.poly.polynomial import Polynomial

PowerCache = MutableMapping[tuple[int, int], IntervalLike]


def enclose_poly(p: Polynomial, X: Box, power_cache: PowerCache | None = None) -> IntervalLike:
    """Interval containing {p(t) : t in X}, evaluated term by term.

    ``power_cache`` may be shared between calls over the same box (for
    example all entries of a Jacobian) to avoid recomputing x_j^e.
    """
    if X.dim != p.nvars:
        raise UsageError(f"box has dimension {X.dim}, polynomial has {p.nvars} variables")
    cache: PowerCache = {} if power_cache is None else power_cache
    use_complex = X.is_complex() or not p.is_real()
    total: IntervalLike = CInterval.point(0.0) if use_complex else Interval(0.0, 0.0)

    for exponent, coeff in p:
        term: IntervalLike = to_interval(coeff)
        for var, power in enumerate(exponent):
            if power == 0:
                continue
            key = (var, power)
            factor = cache.get(key)
            if factor is None:
                factor = X[var] ** power
                cache[key] = factor
            term = term * factor
        total = total + term
    return total
