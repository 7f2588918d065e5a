"""
Rigorous real and rectangular-complex interval arithmetic.

Every endpoint is computed in round-to-nearest and then pushed one float
outward with ``math.nextafter`` unless the operation is known to be exact.
No global floating-point state is touched, so everything here is thread-safe.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

from src.core.exceptions import InconclusiveError, UsageError

_NEG_INF = -math.inf
_POS_INF = math.inf


def _down(x: float) -> float:
    return math.nextafter(x, _NEG_INF)


def _up(x: float) -> float:
    return math.nextafter(x, _POS_INF)


def _check(value: float) -> float:
    if math.isnan(value):
        raise InconclusiveError("interval operation produced NaN")
    return value


def _sum_bounds(a: float, b: float) -> tuple[float, float]:
    """Enclosure of the exact sum a + b (TwoSum detects exact results)."""
    s = _check(a + b)
    if not math.isfinite(s):
        return (_down(s), s) if s > 0 else (s, _up(s))
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    if err == 0.0:
        return s, s
    if err > 0.0:
        return s, _up(s)
    return _down(s), s


def _products(a: "Interval", b: "Interval") -> tuple[float, float]:
    lo = _POS_INF
    hi = _NEG_INF
    for x in (a.inf, a.sup):
        for y in (b.inf, b.sup):
            if x == 0.0 or y == 0.0:
                p_lo = p_hi = 0.0
            elif x in (1.0, -1.0):
                p_lo = p_hi = x * y
            elif y in (1.0, -1.0):
                p_lo = p_hi = x * y
            else:
                p = _check(x * y)
                p_lo, p_hi = _down(p), _up(p)
            lo = min(lo, p_lo)
            hi = max(hi, p_hi)
    return lo, hi


def _pow_bounds(x: float, k: int) -> tuple[float, float]:
    """Tight enclosure of x**k for a single float x and k >= 0."""
    if k == 0:
        return 1.0, 1.0
    if k == 1 or x == 0.0 or x == 1.0:
        return x, x
    if not math.isfinite(x):
        raise InconclusiveError(f"power of non-finite endpoint {x}")
    exact = Fraction(x) ** k
    try:
        nearest = float(exact)
    except OverflowError:
        return (_NEG_INF, -sys.float_info.max) if exact < 0 else (sys.float_info.max, _POS_INF)
    if Fraction(nearest) == exact:
        return nearest, nearest
    if Fraction(nearest) < exact:
        return nearest, _up(nearest)
    return _down(nearest), nearest


@dataclass(frozen=True, slots=True)
class Interval:
    """Closed real interval [inf, sup]."""

    inf: float
    sup: float

    def __post_init__(self) -> None:
        if math.isnan(self.inf) or math.isnan(self.sup):
            raise InconclusiveError("interval with NaN endpoint")
        if self.inf > self.sup:
            raise UsageError(f"invalid interval [{self.inf}, {self.sup}]")

    # ------------------------------------------------------------------ builders
    @classmethod
    def point(cls, value: float) -> Interval:
        value = float(value)
        return cls(value, value)

    @classmethod
    def from_midrad(cls, mid: float, rad: float) -> Interval:
        if rad < 0:
            raise UsageError(f"negative radius {rad}")
        return cls(_down(mid - rad), _up(mid + rad))

    @classmethod
    def symmetric(cls, radius: float) -> Interval:
        return cls(-radius, radius)

    # ------------------------------------------------------------------ queries
    @property
    def mid(self) -> float:
        if math.isfinite(self.inf) and math.isfinite(self.sup):
            m = (self.inf + self.sup) / 2.0
            if math.isfinite(m):
                return m
            return self.inf / 2.0 + self.sup / 2.0
        return 0.0 if self.inf == _NEG_INF and self.sup == _POS_INF else (
            self.inf if math.isfinite(self.inf) else self.sup
        )

    @property
    def rad(self) -> float:
        m = self.mid
        return _up(max(m - self.inf, self.sup - m))

    @property
    def width(self) -> float:
        return _up(self.sup - self.inf)

    def mag(self) -> float:
        return max(abs(self.inf), abs(self.sup))

    def is_finite(self) -> bool:
        return math.isfinite(self.inf) and math.isfinite(self.sup)

    def contains_zero(self) -> bool:
        return self.inf <= 0.0 <= self.sup

    def __contains__(self, value: object) -> bool:
        if isinstance(value, Interval):
            return self.inf <= value.inf and value.sup <= self.sup
        if isinstance(value, (int, float)):
            return self.inf <= value <= self.sup
        if isinstance(value, complex):
            return value.imag == 0.0 and self.inf <= value.real <= self.sup
        return False

    # ------------------------------------------------------------------ arithmetic
    def __neg__(self) -> Interval:
        return Interval(-self.sup, -self.inf)

    def __add__(self, other: object) -> Interval | CInterval:
        if isinstance(other, CInterval) or isinstance(other, complex):
            return CInterval.coerce(self) + other
        rhs = _as_interval(other)
        if rhs is None:
            return NotImplemented
        lo, _ = _sum_bounds(self.inf, rhs.inf)
        _, hi = _sum_bounds(self.sup, rhs.sup)
        return Interval(lo, hi)

    __radd__ = __add__

    def __sub__(self, other: object) -> Interval | CInterval:
        if isinstance(other, CInterval) or isinstance(other, complex):
            return CInterval.coerce(self) - other
        rhs = _as_interval(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: object) -> Interval | CInterval:
        return (-self) + other

    def __mul__(self, other: object) -> Interval | CInterval:
        if isinstance(other, CInterval) or isinstance(other, complex):
            return CInterval.coerce(self) * other
        rhs = _as_interval(other)
        if rhs is None:
            return NotImplemented
        return Interval(*_products(self, rhs))

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> Interval | CInterval:
        if isinstance(other, CInterval) or isinstance(other, complex):
            return CInterval.coerce(self) / other
        rhs = _as_interval(other)
        if rhs is None:
            return NotImplemented
        if rhs.contains_zero():
            raise InconclusiveError(f"division by interval containing zero {rhs}")
        lo = _POS_INF
        hi = _NEG_INF
        for x in (self.inf, self.sup):
            for y in (rhs.inf, rhs.sup):
                q = _check(x / y)
                if x == 0.0 or y in (1.0, -1.0):
                    q_lo = q_hi = q
                else:
                    q_lo, q_hi = _down(q), _up(q)
                lo = min(lo, q_lo)
                hi = max(hi, q_hi)
        return Interval(lo, hi)

    def __rtruediv__(self, other: object) -> Interval | CInterval:
        lhs = _as_interval(other)
        if lhs is None:
            if isinstance(other, complex):
                return CInterval.point(other) / self
            return NotImplemented
        return lhs / self

    def __pow__(self, k: int) -> Interval:
        if not isinstance(k, int) or k < 0:
            raise UsageError(f"interval powers must be non-negative integers (got {k})")
        if k == 0:
            return Interval(1.0, 1.0)
        if k % 2 == 1:
            lo, _ = _pow_bounds(self.inf, k)
            _, hi = _pow_bounds(self.sup, k)
            return Interval(lo, hi)
        if self.inf >= 0.0:
            lo, _ = _pow_bounds(self.inf, k)
            _, hi = _pow_bounds(self.sup, k)
        elif self.sup <= 0.0:
            lo, _ = _pow_bounds(-self.sup, k)
            _, hi = _pow_bounds(-self.inf, k)
        else:
            lo = 0.0
            _, hi = _pow_bounds(self.mag(), k)
        return Interval(max(lo, 0.0), hi)

    def __repr__(self) -> str:
        return f"[{self.inf!r}, {self.sup!r}]"


@dataclass(frozen=True, slots=True)
class CInterval:
    """Axis-aligned complex rectangle re + i*im."""

    re: Interval
    im: Interval

    @classmethod
    def point(cls, value: complex | float) -> CInterval:
        value = complex(value)
        return cls(Interval.point(value.real), Interval.point(value.imag))

    @classmethod
    def coerce(cls, value: object) -> CInterval:
        if isinstance(value, CInterval):
            return value
        if isinstance(value, Interval):
            return cls(value, Interval(0.0, 0.0))
        if isinstance(value, (int, float, complex)):
            return cls.point(value)
        raise UsageError(f"cannot convert {type(value).__name__} to a complex interval")

    @property
    def mid(self) -> complex:
        return complex(self.re.mid, self.im.mid)

    @property
    def rad(self) -> float:
        return max(self.re.rad, self.im.rad)

    @property
    def width(self) -> float:
        return max(self.re.width, self.im.width)

    def mag(self) -> float:
        return max(self.re.mag(), self.im.mag())

    def is_finite(self) -> bool:
        return self.re.is_finite() and self.im.is_finite()

    def contains_zero(self) -> bool:
        return self.re.contains_zero() and self.im.contains_zero()

    def __contains__(self, value: object) -> bool:
        if isinstance(value, CInterval):
            return value.re in self.re and value.im in self.im
        if isinstance(value, (int, float, complex)):
            value = complex(value)
            return value.real in self.re and value.imag in self.im
        return False

    def __neg__(self) -> CInterval:
        return CInterval(-self.re, -self.im)

    def __add__(self, other: object) -> CInterval:
        rhs = _as_cinterval(other)
        if rhs is None:
            return NotImplemented
        return CInterval(self.re + rhs.re, self.im + rhs.im)

    __radd__ = __add__

    def __sub__(self, other: object) -> CInterval:
        rhs = _as_cinterval(other)
        if rhs is None:
            return NotImplemented
        return CInterval(self.re - rhs.re, self.im - rhs.im)

    def __rsub__(self, other: object) -> CInterval:
        return (-self) + other

    def __mul__(self, other: object) -> CInterval:
        rhs = _as_cinterval(other)
        if rhs is None:
            return NotImplemented
        return CInterval(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> CInterval:
        rhs = _as_cinterval(other)
        if rhs is None:
            return NotImplemented
        denom = rhs.re**2 + rhs.im**2
        if denom.contains_zero():
            raise InconclusiveError(f"division by complex interval containing zero {rhs}")
        numerator = self * CInterval(rhs.re, -rhs.im)
        return CInterval(numerator.re / denom, numerator.im / denom)

    def __rtruediv__(self, other: object) -> CInterval:
        lhs = _as_cinterval(other)
        if lhs is None:
            return NotImplemented
        return lhs / self

    def __pow__(self, k: int) -> CInterval:
        if not isinstance(k, int) or k < 0:
            raise UsageError(f"interval powers must be non-negative integers (got {k})")
        if self.im.inf == 0.0 and self.im.sup == 0.0:
            return CInterval(self.re**k, Interval(0.0, 0.0))
        result = CInterval.point(1.0)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __repr__(self) -> str:
        return f"({self.re!r} + i{self.im!r})"


IntervalLike = Union[Interval, CInterval]


def _as_interval(value: object) -> Interval | None:
    if isinstance(value, Interval):
        return value
    if isinstance(value, bool):
        return None
    if isinstance(value, (int, float)):
        return Interval.point(value)
    return None


def _as_cinterval(value: object) -> CInterval | None:
    if isinstance(value, (CInterval, Interval, int, float, complex)) and not isinstance(value, bool):
        return CInterval.coerce(value)
    return None


def to_interval(value: object) -> IntervalLike:
    """Point enclosure of a scalar (complex values become rectangles)."""
    if isinstance(value, (Interval, CInterval)):
        return value
    if isinstance(value, complex):
        return CInterval.point(value)
    return Interval.point(float(value))


def interval_arith(kind: str, a: IntervalLike, b: object = None) -> IntervalLike:
    """Dispatch ``add``, ``sub``, ``mul``, ``div`` or ``pow`` (b is the integer exponent)."""
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        return a / b
    if kind in ("pow", "pow-int"):
        return a**b
    raise UsageError(f"unknown interval operation {kind!r}")


@dataclass(frozen=True)
class Box:
    """Ordered interval vector."""

    entries: tuple[IntervalLike, ...]

    def __init__(self, entries: Iterable[IntervalLike]) -> None:
        object.__setattr__(self, "entries", tuple(entries))

    @classmethod
    def symmetric(cls, radii: Sequence[float]) -> Box:
        return cls(Interval.symmetric(float(r)) for r in radii)

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[IntervalLike]:
        return iter(self.entries)

    def __getitem__(self, index: int | slice) -> IntervalLike | Box:
        if isinstance(index, slice):
            return Box(self.entries[index])
        return self.entries[index]

    def is_complex(self) -> bool:
        return any(isinstance(e, CInterval) for e in self.entries)

    def is_finite(self) -> bool:
        return all(e.is_finite() for e in self.entries)

    def mid(self) -> list[float | complex]:
        return [e.mid for e in self.entries]

    def rad(self) -> list[float]:
        return [e.rad for e in self.entries]

    def max_mag(self) -> float:
        return max((e.mag() for e in self.entries), default=0.0)

    def shifted(self, center: Sequence[float | complex]) -> Box:
        """center + X, rigorously."""
        if len(center) != self.dim:
            raise UsageError(f"center has {len(center)} entries, box has {self.dim}")
        return Box(e + c for e, c in zip(self.entries, center))

    def __repr__(self) -> str:
        return f"Box({list(self.entries)!r})"


@dataclass(frozen=True)
class IntervalMatrix:
    """Row-major interval matrix."""

    rows: tuple[tuple[IntervalLike, ...], ...]

    def __init__(self, rows: Iterable[Iterable[IntervalLike]]) -> None:
        materialized = tuple(tuple(r) for r in rows)
        widths = {len(r) for r in materialized}
        if len(widths) > 1:
            raise UsageError("interval matrix rows have different lengths")
        object.__setattr__(self, "rows", materialized)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def __getitem__(self, index: tuple[int, int]) -> IntervalLike:
        i, j = index
        return self.rows[i][j]

    def is_finite(self) -> bool:
        return all(e.is_finite() for row in self.rows for e in row)


def subset_interior(inner: Box, outer: Box) -> bool:
    """Strict containment of ``inner`` in the interior of ``outer``, per coordinate."""
    if inner.dim != outer.dim:
        raise UsageError(f"box dimensions differ: {inner.dim} vs {outer.dim}")
    for a, b in zip(inner, outer):
        if isinstance(a, CInterval) or isinstance(b, CInterval):
            ca, cb = CInterval.coerce(a), CInterval.coerce(b)
            if not (_strict(ca.re, cb.re) and _strict(ca.im, cb.im)):
                return False
        elif not _strict(a, b):
            return False
    return True


def _strict(a: Interval, b: Interval) -> bool:
    return b.inf < a.inf and a.sup < b.sup
