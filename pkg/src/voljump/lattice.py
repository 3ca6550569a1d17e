"""Exact arithmetic on the rank-11 Picard lattice of P^2 blown up at ten points.

The fixed basis is (H, E1, ..., E10): H is the pullback of the hyperplane
class, E1..E10 the exceptional classes.  The intersection form is diagonal
(+1, -1, ..., -1) in this basis.  All coefficients are exact rationals; no
float ever enters this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

RANK = 11

#: Diagonal of the Gram matrix in the (H, E1..E10) basis: signature (1, 10).
GRAM_DIAGONAL = (1,) + (-1,) * 10

Rational = int | Fraction


def _as_fraction(x: Rational) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"exact rational required, got {type(x).__name__}")


@dataclass(frozen=True)
class DivisorClass:
    """A divisor class as an exact coefficient vector over (H, E1..E10).

    Immutable value type; arithmetic returns fresh instances.
    """

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable[Rational]):
        values = tuple(_as_fraction(c) for c in coeffs)
        if len(values) != RANK:
            raise ValueError(f"expected {RANK} coefficients, got {len(values)}")
        object.__setattr__(self, "coeffs", values)

    @property
    def h(self) -> Fraction:
        """Coefficient of H (the degree of the image curve in P^2)."""
        return self.coeffs[0]

    def e(self, i: int) -> Fraction:
        """Coefficient of E_i, 1-based index."""
        if not 1 <= i <= 10:
            raise ValueError(f"exceptional index must be in 1..10, got {i}")
        return self.coeffs[i]

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(-a for a in self.coeffs)

    def __rmul__(self, scalar: Rational) -> "DivisorClass":
        s = _as_fraction(scalar)
        return DivisorClass(s * a for a in self.coeffs)

    __mul__ = __rmul__

    def to_json_array(self) -> list[str]:
        """Serialize as 11 exact fraction strings "p/q" (never binary floats)."""
        return [f"{c.numerator}/{c.denominator}" for c in self.coeffs]

    @classmethod
    def from_json_array(cls, items: Sequence[str]) -> "DivisorClass":
        return cls(Fraction(s) for s in items)

    def __str__(self) -> str:
        names = ["H"] + [f"E{i}" for i in range(1, 11)]
        parts: list[str] = []
        for c, name in zip(self.coeffs, names):
            if c == 0:
                continue
            mag = abs(c)
            term = name if mag == 1 else f"{mag}*{name}"
            parts.append(("- " if c < 0 else "+ " if parts else "") + term)
        return " ".join(parts) if parts else "0"


def hyperplane() -> DivisorClass:
    """The class H."""
    return DivisorClass([1] + [0] * 10)


def exceptional(i: int) -> DivisorClass:
    """The exceptional class E_i, 1-based index."""
    if not 1 <= i <= 10:
        raise ValueError(f"exceptional index must be in 1..10, got {i}")
    return DivisorClass([0] * i + [1] + [0] * (10 - i))


def canonical_class() -> DivisorClass:
    """The canonical class -3H + E1 + ... + E10."""
    return DivisorClass([-3] + [1] * 10)


def line_through(i: int, j: int, k: int) -> DivisorClass:
    """The class H - E_i - E_j - E_k of a line through three of the points."""
    if len({i, j, k}) != 3:
        raise ValueError(f"indices must be pairwise distinct, got ({i}, {j}, {k})")
    for idx in (i, j, k):
        if not 1 <= idx <= 10:
            raise ValueError(f"index out of range 1..10: {idx}")
    coeffs = [Fraction(1)] + [Fraction(0)] * 10
    for idx in (i, j, k):
        coeffs[idx] = Fraction(-1)
    return DivisorClass(coeffs)


def standard_line() -> DivisorClass:
    """The distinguished line class H - E1 - E2 - E3 (self-intersection -2)."""
    return line_through(1, 2, 3)


def linear_combination(
    scalars: Sequence[Rational], classes: Sequence[DivisorClass]
) -> DivisorClass:
    """Componentwise exact linear combination of divisor classes."""
    if len(scalars) != len(classes):
        raise ValueError(
            f"length mismatch: {len(scalars)} scalars vs {len(classes)} classes"
        )
    if not classes:
        raise ValueError("linear combination of nothing")
    acc = [Fraction(0)] * RANK
    for s, cls in zip(scalars, classes):
        sf = _as_fraction(s)
        for pos, c in enumerate(cls.coeffs):
            acc[pos] += sf * c
    return DivisorClass(acc)


def pair(a: DivisorClass, b: DivisorClass) -> Fraction:
    """Intersection pairing: a0*b0 - sum_{i=1..10} a_i*b_i, exact."""
    total = a.coeffs[0] * b.coeffs[0]
    for x, y in zip(a.coeffs[1:], b.coeffs[1:]):
        total -= x * y
    return total


def gram_matrix() -> tuple[tuple[int, ...], ...]:
    """Gram matrix of the basis (H, E1..E10): diag(1, -1, ..., -1)."""
    return tuple(
        tuple(GRAM_DIAGONAL[i] if i == j else 0 for j in range(RANK))
        for i in range(RANK)
    )
