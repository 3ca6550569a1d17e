"""Orbits of divisor classes under the composite map.

Iterating the exact integer matrix keeps every orbit computation exact, so
distinctness of orbit classes, self-intersections and canonical degrees are
checked with no tolerance at all.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .lattice import DivisorClass, canonical_class, pair
from .transform import LatticeIsometry, apply, composite_T


@dataclass(frozen=True)
class OrbitRecord:
    """One orbit step: the class T^n(seed) with its basic invariants."""

    n: int
    divisor: DivisorClass
    self_intersection: Fraction
    canonical_degree: Fraction

    @classmethod
    def of(cls, n: int, divisor: DivisorClass) -> "OrbitRecord":
        return cls(
            n,
            divisor,
            pair(divisor, divisor),
            pair(divisor, canonical_class()),
        )


def iterate(
    seed: DivisorClass, n: int, transform: LatticeIsometry | None = None
) -> OrbitRecord:
    """The class T^n(seed), computed by repeated squaring of the matrix."""
    if n < 0:
        raise ValueError("orbit index must be nonnegative")
    t = transform if transform is not None else composite_T()
    return OrbitRecord.of(n, apply(t.power(n), seed))


def orbit(
    seed: DivisorClass, count: int, transform: LatticeIsometry | None = None
) -> Iterator[OrbitRecord]:
    """Records for T^0(seed) .. T^{count-1}(seed), by naive stepping."""
    if count < 0:
        raise ValueError("orbit length must be nonnegative")
    t = transform if transform is not None else composite_T()
    current = seed
    for n in range(count):
        yield OrbitRecord.of(n, current)
        current = apply(t, current)


@dataclass(frozen=True)
class DistinctnessResult:
    distinct: bool
    collision: tuple[int, int] | None = None  # first (n, m) with equal classes


def verify_distinct(
    seed: DivisorClass, count: int, transform: LatticeIsometry | None = None
) -> DistinctnessResult:
    """Exact pairwise distinctness of T^0(seed) .. T^{count-1}(seed)."""
    if count < 1:
        raise ValueError("need at least one orbit element")
    seen: dict[tuple[Fraction, ...], int] = {}
    for record in orbit(seed, count, transform):
        key = record.divisor.coeffs
        if key in seen:
            return DistinctnessResult(False, (seen[key], record.n))
        seen[key] = record.n
    return DistinctnessResult(True)


def growth_profile(
    seed: DivisorClass, count: int, transform: LatticeIsometry | None = None
) -> list[tuple[int, Fraction]]:
    """Exact H-coefficients along the orbit; the diagnostic for dominant growth.

    Successive ratios converge to the dominant eigenvalue whenever the seed
    has a component along the dominant eigenvector.
    """
    if count < 3:
        raise ValueError("growth profile needs at least three steps")
    return [(r.n, r.divisor.h) for r in orbit(seed, count, transform)]


def growth_ratios(profile: list[tuple[int, Fraction]]) -> list[tuple[int, Fraction]]:
    """Ratios h_{n+1} / h_n for consecutive nonzero H-coefficients."""
    out = []
    for (n, a), (_, b) in zip(profile, profile[1:]):
        if a != 0:
            out.append((n, b / a))
    return out


def max_norm_increase_start(
    seed: DivisorClass, count: int, transform: LatticeIsometry | None = None
) -> int | None:
    """Smallest n1 with the orbit's max-norm strictly increasing from n1 on.

    Returns None if the norm is still not monotone at the end of the window.
    """
    norms = [
        max(abs(c) for c in r.divisor.coeffs) for r in orbit(seed, count, transform)
    ]
    start: int | None = None
    for n in range(len(norms) - 1):
        if norms[n + 1] > norms[n]:
            if start is None:
                start = n
        else:
            start = None
    return start
