"""
Sparse multivariate polynomials over binary64 real or complex coefficients.

A polynomial is a map exponent-tuple -> coefficient with no zero coefficients,
stored in graded-lexicographic order (highest degree first) so that two equal
polynomials always iterate, print and hash identically. Values are immutable;
every operation returns a new object.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence, Union

import numpy as np

from src.core.exceptions import UsageError

Scalar = Union[float, complex]
Exponent = tuple[int, ...]


def _normalize(value: complex | float | int) -> Scalar:
    if isinstance(value, complex):
        if value.imag == 0.0:
            return float(value.real)
        return value
    if isinstance(value, np.generic):
        return _normalize(value.item())
    return float(value)


def _grlex_key(exponent: Exponent) -> tuple[int, Exponent]:
    return (sum(exponent), exponent)


class Polynomial:
    """Sparse polynomial in ``nvars`` variables."""

    __slots__ = ("_terms", "nvars", "_compiled", "_hash")

    def __init__(self, terms: Mapping[Sequence[int], Scalar] | None, nvars: int) -> None:
        if nvars < 0:
            raise UsageError(f"nvars must be >= 0 (got {nvars})")
        clean: dict[Exponent, Scalar] = {}
        for exponent, coeff in (terms or {}).items():
            key = tuple(int(e) for e in exponent)
            if len(key) != nvars:
                raise UsageError(f"exponent {key} has length {len(key)}, expected {nvars}")
            if any(e < 0 for e in key):
                raise UsageError(f"negative exponent in {key}")
            value = _normalize(coeff)
            if value != 0:
                clean[key] = value
        ordered = sorted(clean.items(), key=lambda item: _grlex_key(item[0]), reverse=True)
        self._terms: dict[Exponent, Scalar] = dict(ordered)
        self.nvars = nvars
        self._compiled: tuple[np.ndarray, np.ndarray] | None = None
        self._hash: int | None = None

    # ------------------------------------------------------------------ builders
    @classmethod
    def zero(cls, nvars: int) -> Polynomial:
        return cls({}, nvars)

    @classmethod
    def constant(cls, value: Scalar, nvars: int) -> Polynomial:
        return cls({(0,) * nvars: value}, nvars)

    @classmethod
    def variable(cls, index: int, nvars: int) -> Polynomial:
        if not 0 <= index < nvars:
            raise UsageError(f"variable index {index} out of range for {nvars} variables")
        exponent = [0] * nvars
        exponent[index] = 1
        return cls({tuple(exponent): 1.0}, nvars)

    @classmethod
    def monomial(cls, coeff: Scalar, exponent: Sequence[int]) -> Polynomial:
        return cls({tuple(exponent): coeff}, len(exponent))

    # ------------------------------------------------------------------ access
    @property
    def terms(self) -> Mapping[Exponent, Scalar]:
        return MappingProxyType(self._terms)

    def __iter__(self) -> Iterator[tuple[Exponent, Scalar]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_value(self) -> Scalar:
        return self._terms.get((0,) * self.nvars, 0.0)

    def is_real(self) -> bool:
        return all(not isinstance(c, complex) for c in self._terms.values())

    def degree(self, var: int | None = None) -> int:
        """Total degree, or degree in one variable; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        if var is None:
            return max(sum(e) for e in self._terms)
        return max(e[var] for e in self._terms)

    def variables_used(self) -> set[int]:
        return {j for e in self._terms for j, power in enumerate(e) if power}

    # ------------------------------------------------------------------ arithmetic
    def _coerce(self, other: object) -> Polynomial | None:
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise UsageError(f"nvars mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, (int, float, complex, np.number)):
            return Polynomial.constant(other, self.nvars)
        return None

    def __add__(self, other: object) -> Polynomial:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        merged = dict(self._terms)
        for exponent, coeff in rhs._terms.items():
            merged[exponent] = merged.get(exponent, 0.0) + coeff
        return Polynomial(merged, self.nvars)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial({e: -c for e, c in self._terms.items()}, self.nvars)

    def __sub__(self, other: object) -> Polynomial:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: object) -> Polynomial:
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs - self

    def __mul__(self, other: object) -> Polynomial:
        if isinstance(other, (int, float, complex, np.number)):
            return Polynomial({e: c * other for e, c in self._terms.items()}, self.nvars)
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        product: dict[Exponent, Scalar] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in rhs._terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                product[key] = product.get(key, 0.0) + c1 * c2
        return Polynomial(product, self.nvars)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> Polynomial:
        if isinstance(other, (int, float, complex, np.number)):
            if other == 0:
                raise UsageError("division of a polynomial by zero")
            return Polynomial({e: c / other for e, c in self._terms.items()}, self.nvars)
        return NotImplemented

    def __pow__(self, power: int) -> Polynomial:
        if not isinstance(power, int) or power < 0:
            raise UsageError(f"polynomial powers must be non-negative integers (got {power})")
        result = Polynomial.constant(1.0, self.nvars)
        base = self
        while power:
            if power & 1:
                result = result * base
            base = base * base
            power >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, float, complex)):
            return self == Polynomial.constant(other, self.nvars)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, tuple(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"Polynomial({self._terms!r}, nvars={self.nvars})"

    # ------------------------------------------------------------------ calculus
    def differentiate(self, var: int) -> Polynomial:
        """Unnormalized partial derivative with respect to variable ``var``."""
        if not 0 <= var < self.nvars:
            raise UsageError(f"variable index {var} out of range for {self.nvars} variables")
        result: dict[Exponent, Scalar] = {}
        for exponent, coeff in self._terms.items():
            power = exponent[var]
            if power == 0:
                continue
            lowered = exponent[:var] + (power - 1,) + exponent[var + 1 :]
            result[lowered] = result.get(lowered, 0.0) + coeff * power
        return Polynomial(result, self.nvars)

    def compiled(self) -> tuple[np.ndarray, np.ndarray]:
        """Exponent matrix (terms x nvars) and coefficient vector."""
        if self._compiled is None:
            if self._terms:
                exps = np.array(list(self._terms.keys()), dtype=np.int64).reshape(-1, self.nvars)
                coeffs = np.array(list(self._terms.values()))
            else:
                exps = np.zeros((0, self.nvars), dtype=np.int64)
                coeffs = np.zeros(0)
            self._compiled = (exps, coeffs)
        return self._compiled

    def evaluate(self, point: Sequence[Scalar] | np.ndarray) -> Scalar:
        """Plain floating-point value at ``point`` (not rigorous)."""
        values = np.asarray(point)
        if values.shape != (self.nvars,):
            raise UsageError(f"point has shape {values.shape}, expected ({self.nvars},)")
        if not self._terms:
            return 0.0
        exps, coeffs = self.compiled()
        monomials = np.prod(values[None, :] ** exps, axis=1) if self.nvars else np.ones(len(coeffs))
        return _normalize(complex(np.dot(monomials, coeffs))) if (
            np.iscomplexobj(values) or np.iscomplexobj(coeffs)
        ) else float(np.dot(monomials, coeffs))

    # ------------------------------------------------------------------ variable space
    def embed(self, nvars: int, positions: Sequence[int] | None = None) -> Polynomial:
        """Re-express in ``nvars`` variables; old variable i becomes ``positions[i]``."""
        if positions is None:
            positions = range(self.nvars)
        positions = list(positions)
        if len(positions) != self.nvars or any(not 0 <= p < nvars for p in positions):
            raise UsageError("invalid embedding of polynomial variables")
        result: dict[Exponent, Scalar] = {}
        for exponent, coeff in self._terms.items():
            target = [0] * nvars
            for old, power in enumerate(exponent):
                target[positions[old]] += power
            key = tuple(target)
            result[key] = result.get(key, 0.0) + coeff
        return Polynomial(result, nvars)

    def substitute(self, values: Mapping[int, Scalar]) -> Polynomial:
        """Fix the given variables to constants (the variable space is unchanged)."""
        for var in values:
            if not 0 <= var < self.nvars:
                raise UsageError(f"variable index {var} out of range for {self.nvars} variables")
        result: dict[Exponent, Scalar] = {}
        for exponent, coeff in self._terms.items():
            factor = coeff
            target = list(exponent)
            for var, value in values.items():
                if target[var]:
                    factor = factor * value ** target[var]
                    target[var] = 0
            key = tuple(target)
            result[key] = result.get(key, 0.0) + factor
        return Polynomial(result, self.nvars)


@dataclass(frozen=True)
class PolySystem:
    """Ordered list of polynomials sharing one variable space."""

    polys: tuple[Polynomial, ...]
    var_names: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "polys", tuple(self.polys))
        object.__setattr__(self, "var_names", tuple(self.var_names))
        if len(set(self.var_names)) != len(self.var_names):
            raise UsageError(f"duplicate variable names in {self.var_names}")
        for index, poly in enumerate(self.polys):
            if poly.nvars != len(self.var_names):
                raise UsageError(
                    f"polynomial {index} has {poly.nvars} variables, system declares "
                    f"{len(self.var_names)}"
                )

    @property
    def nvars(self) -> int:
        return len(self.var_names)

    @property
    def arity(self) -> int:
        return len(self.polys)

    def is_square(self) -> bool:
        return self.arity == self.nvars

    def is_real(self) -> bool:
        return all(p.is_real() for p in self.polys)

    def __len__(self) -> int:
        return len(self.polys)

    def __iter__(self) -> Iterator[Polynomial]:
        return iter(self.polys)

    def __getitem__(self, index: int) -> Polynomial:
        return self.polys[index]

    def variable(self, name: str) -> Polynomial:
        return Polynomial.variable(self.var_names.index(name), self.nvars)

    def evaluate(self, point: Sequence[Scalar] | np.ndarray) -> np.ndarray:
        values = [p.evaluate(point) for p in self.polys]
        dtype = complex if any(isinstance(v, complex) for v in values) else float
        return np.array(values, dtype=dtype)

    @cached_property
    def jacobian_matrix(self) -> tuple[tuple[Polynomial, ...], ...]:
        return tuple(tuple(row) for row in jacobian(self))

    def jacobian(self) -> list[list[Polynomial]]:
        return [list(row) for row in self.jacobian_matrix]

    def jacobian_at(self, point: Sequence[Scalar] | np.ndarray) -> np.ndarray:
        rows = [[entry.evaluate(point) for entry in row] for row in self.jacobian_matrix]
        dtype = complex if any(isinstance(v, complex) for row in rows for v in row) else float
        return np.array(rows, dtype=dtype).reshape(self.arity, self.nvars)

    def extend(self, polys: Iterable[Polynomial]) -> PolySystem:
        return PolySystem(self.polys + tuple(polys), self.var_names)

    def embed(self, var_names: Sequence[str]) -> PolySystem:
        """Move into a larger variable space that starts with the current names."""
        var_names = tuple(var_names)
        if var_names[: self.nvars] != self.var_names:
            raise UsageError("embedding must keep the existing variables as a prefix")
        return PolySystem(tuple(p.embed(len(var_names)) for p in self.polys), var_names)

    def substitute(self, values: Mapping[int, Scalar]) -> PolySystem:
        return PolySystem(tuple(p.substitute(values) for p in self.polys), self.var_names)


def differentiate(p: Polynomial, var: int) -> Polynomial:
    return p.differentiate(var)


def evaluate(p: Polynomial, point: Sequence[Scalar] | np.ndarray) -> Scalar:
    return p.evaluate(point)


def jacobian(system: PolySystem) -> list[list[Polynomial]]:
    """Entry (i, j) is the derivative of polynomial i with respect to variable j."""
    return [[p.differentiate(j) for j in range(system.nvars)] for p in system.polys]


def jacobian_apply(
    system: PolySystem,
    variables: Sequence[int],
    v: Sequence[Polynomial],
) -> PolySystem:
    """Symbolic product of the Jacobian w.r.t. ``variables`` with the template ``v``.

    ``v`` holds constant-one entries and fresh symbols; the result has the same
    arity as ``system`` and lives in the same variable space.
    """
    if len(v) != len(variables):
        raise UsageError(f"template has {len(v)} entries for {len(variables)} variables")
    rows = []
    for poly in system.polys:
        row = Polynomial.zero(system.nvars)
        for var, direction in zip(variables, v):
            partial = poly.differentiate(var)
            if partial.is_zero() or direction.is_zero():
                continue
            if direction.is_constant():
                row = row + partial * direction.constant_value()
            else:
                row = row + partial * direction
        rows.append(row)
    return PolySystem(tuple(rows), system.var_names)


def factorial_weight(order: int) -> float:
    """1/order! as a binary64 scalar."""
    return 1.0 / math.factorial(order)
