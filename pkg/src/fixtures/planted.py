"""
Random regular systems with a planted root.

Coefficients are small integers and root coordinates are multiples of 1/4,
so the constant terms are computed exactly and the planted point is an
exact root of the stored binary64 system.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from src.poly.polynomial import Polynomial, PolySystem


@dataclass(frozen=True)
class PlantedSystem:
    name: str
    system: PolySystem
    root: tuple[float, ...]
    start: tuple[float, ...]


def _exact_value(terms: dict[tuple[int, ...], float], root: tuple[float, ...]) -> float:
    total = Fraction(0)
    for exponent, coeff in terms.items():
        value = Fraction(coeff)
        for r, k in zip(root, exponent):
            value *= Fraction(r) ** k
        total += value
    return float(total)


def _random_exponent(rng: np.random.Generator, n: int, degree: int) -> tuple[int, ...]:
    exponent = [0] * n
    for _ in range(degree):
        exponent[int(rng.integers(n))] += 1
    return tuple(exponent)


def planted_system(
    rng: np.random.Generator,
    index: int = 0,
    max_vars: int = 4,
    max_degree: int = 3,
    noise: float = 1e-8,
    min_sigma: float = 0.1,
) -> PlantedSystem:
    """One square system with a regular root at a dyadic point."""
    while True:
        n = int(rng.integers(1, max_vars + 1))
        root = tuple(float(k) / 4.0 for k in rng.integers(-8, 9, size=n))
        names = tuple(f"x{i + 1}" for i in range(n))
        polys = []
        for _ in range(n):
            terms: dict[tuple[int, ...], float] = {}
            for j in range(n):
                unit = tuple(1 if i == j else 0 for i in range(n))
                terms[unit] = float(rng.integers(-5, 6))
            for _ in range(int(rng.integers(1, 4))):
                exponent = _random_exponent(rng, n, int(rng.integers(2, max_degree + 1)))
                terms[exponent] = terms.get(exponent, 0.0) + float(rng.integers(-3, 4))
            terms[(0,) * n] = -_exact_value(terms, root)
            polys.append(Polynomial(terms, n))
        system = PolySystem(tuple(polys), names)
        sigma = np.linalg.svd(system.jacobian_at(np.array(root)), compute_uv=False)
        if sigma[-1] >= min_sigma:
            break

    start = tuple(float(r + noise * rng.uniform(-1.0, 1.0)) for r in root)
    return PlantedSystem(f"planted-{index:03d}", system, root, start)


def planted_systems(count: int, seed: int) -> list[PlantedSystem]:
    rng = np.random.default_rng(seed)
    return [planted_system(rng, index) for index in range(count)]
