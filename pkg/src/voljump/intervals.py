"""Certified interval arithmetic with exact rational endpoints.

A RealEnclosure is a closed interval [lo, hi] with Fraction endpoints that
provably contains one real quantity.  All operations here are outward-exact:
because endpoints are rationals, sums and products of enclosures enclose the
true results with no rounding step at all.  The only deliberate loss is
``outward``, which widens an enclosure onto a coarser dyadic grid to keep
denominators small in long computations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Union

from .errors import CertificationError
from .lattice import RANK, DivisorClass, Rational, _as_fraction

_Operand = Union["RealEnclosure", int, Fraction]


@dataclass(frozen=True)
class RealEnclosure:
    """Closed interval [lo, hi] with exact rational endpoints, lo <= hi."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if not (isinstance(self.lo, Fraction) and isinstance(self.hi, Fraction)):
            object.__setattr__(self, "lo", _as_fraction(self.lo))
            object.__setattr__(self, "hi", _as_fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"inverted interval [{self.lo}, {self.hi}]")

    @classmethod
    def exact(cls, value: Rational) -> "RealEnclosure":
        v = _as_fraction(value)
        return cls(v, v)

    # -- queries ------------------------------------------------------------

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, value: Rational) -> bool:
        v = _as_fraction(value)
        return self.lo <= v <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def is_positive(self) -> bool:
        """Certified strict positivity."""
        return self.lo > 0

    def is_negative(self) -> bool:
        return self.hi < 0

    def strictly_less(self, other: _Operand) -> bool:
        """Certified strict inequality self < other."""
        o = _coerce(other)
        return self.hi < o.lo

    def strictly_inside(self, lo: Rational, hi: Rational) -> bool:
        return _as_fraction(lo) < self.lo and self.hi < _as_fraction(hi)

    def overlaps(self, other: "RealEnclosure") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: _Operand) -> "RealEnclosure":
        o = _coerce(other)
        return RealEnclosure(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self) -> "RealEnclosure":
        return RealEnclosure(-self.hi, -self.lo)

    def __sub__(self, other: _Operand) -> "RealEnclosure":
        return self + (-_coerce(other))

    def __rsub__(self, other: _Operand) -> "RealEnclosure":
        return _coerce(other) + (-self)

    def __mul__(self, other: _Operand) -> "RealEnclosure":
        o = _coerce(other)
        products = (
            self.lo * o.lo,
            self.lo * o.hi,
            self.hi * o.lo,
            self.hi * o.hi,
        )
        return RealEnclosure(min(products), max(products))

    __rmul__ = __mul__

    def __truediv__(self, other: _Operand) -> "RealEnclosure":
        o = _coerce(other)
        if o.contains_zero():
            raise CertificationError(
                f"interval division by [{o.lo}, {o.hi}] straddling zero"
            )
        reciprocals = (1 / o.lo, 1 / o.hi)
        return self * RealEnclosure(min(reciprocals), max(reciprocals))

    def __rtruediv__(self, other: _Operand) -> "RealEnclosure":
        return _coerce(other) / self

    def square(self) -> "RealEnclosure":
        """Tight square (unlike self * self when the interval straddles 0)."""
        if self.contains_zero():
            return RealEnclosure(Fraction(0), max(self.lo * self.lo, self.hi * self.hi))
        values = (self.lo * self.lo, self.hi * self.hi)
        return RealEnclosure(min(values), max(values))

    def hull(self, other: "RealEnclosure") -> "RealEnclosure":
        return RealEnclosure(min(self.lo, other.lo), max(self.hi, other.hi))

    def outward(self, bits: int) -> "RealEnclosure":
        """Widen endpoints outward onto the dyadic grid of step 2**-bits.

        Sound by construction (the result contains self); used to stop
        denominator growth in long exact computations.
        """
        scale = 1 << bits
        lo = Fraction(self.lo.numerator * scale // self.lo.denominator, scale)
        hi_scaled = self.hi.numerator * scale
        hi = Fraction(-((-hi_scaled) // self.hi.denominator), scale)
        return RealEnclosure(lo, hi)

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


def _coerce(x: _Operand) -> RealEnclosure:
    if isinstance(x, RealEnclosure):
        return x
    return RealEnclosure.exact(x)


def sqrt_bounds(value: Fraction, bits: int = 128) -> RealEnclosure:
    """Certified enclosure of sqrt(value) for value >= 0, about 2**-bits wide."""
    if value < 0:
        raise ValueError("square root of a negative rational")
    if value == 0:
        return RealEnclosure.exact(0)
    scale = 1 << bits
    scaled = value * scale * scale
    root_floor = isqrt(scaled.numerator // scaled.denominator)
    lo = Fraction(root_floor, scale)
    hi = Fraction(root_floor + 1, scale)
    # floor of sqrt of the rational may still be one off; widen until certain
    while lo * lo > value:
        lo -= Fraction(1, scale)
    while hi * hi < value:
        hi += Fraction(1, scale)
    return RealEnclosure(lo, hi)


@dataclass(frozen=True)
class ClassEnclosure:
    """Eleven coefficient enclosures over the (H, E1..E10) basis.

    Holds certified approximate divisor classes such as the dominant
    eigenvector H - sum r_i E_i or the nef witness H - sum t_i E_i.
    """

    coeffs: tuple[RealEnclosure, ...]

    def __init__(self, coeffs: Iterable[RealEnclosure]):
        values = tuple(coeffs)
        if len(values) != RANK:
            raise ValueError(f"expected {RANK} enclosures, got {len(values)}")
        object.__setattr__(self, "coeffs", values)

    @classmethod
    def from_class(cls, divisor: DivisorClass) -> "ClassEnclosure":
        return cls(RealEnclosure.exact(c) for c in divisor.coeffs)

    def multipliers(self) -> tuple[RealEnclosure, ...]:
        """The ten positive multipliers m_i in H - sum m_i E_i (negated E-coeffs)."""
        return tuple(-c for c in self.coeffs[1:])

    def max_width(self) -> Fraction:
        return max(c.width for c in self.coeffs)

    def midpoint_class(self) -> DivisorClass:
        return DivisorClass(c.midpoint for c in self.coeffs)

    def pair(self, other: Union["ClassEnclosure", DivisorClass]) -> RealEnclosure:
        """Intersection pairing with interval arithmetic."""
        if isinstance(other, DivisorClass):
            other = ClassEnclosure.from_class(other)
        total = self.coeffs[0] * other.coeffs[0]
        for x, y in zip(self.coeffs[1:], other.coeffs[1:]):
            total = total - x * y
        return total

    def self_pair(self) -> RealEnclosure:
        """Tight pairing of the class with itself (uses exact squares)."""
        total = self.coeffs[0].square()
        for c in self.coeffs[1:]:
            total = total - c.square()
        return total

    def multiplier_square_sum(self) -> RealEnclosure:
        """Sum of squared multipliers, sum m_i^2 (tight squares)."""
        total = RealEnclosure.exact(0)
        for c in self.coeffs[1:]:
            total = total + c.square()
        return total

    def outward(self, bits: int) -> "ClassEnclosure":
        return ClassEnclosure(c.outward(bits) for c in self.coeffs)


def decimal_string(value: Fraction, digits: int) -> str:
    """Render an exact rational as a decimal string with `digits` places.

    Rounds half away from zero; fully deterministic (no float involved).
    """
    if digits < 0:
        raise ValueError("digits must be nonnegative")
    sign = "-" if value < 0 else ""
    mag = -value if value < 0 else value
    scaled = mag * 10**digits
    units, rem = divmod(scaled.numerator, scaled.denominator)
    if 2 * rem >= scaled.denominator:
        units += 1
    text = str(units).rjust(digits + 1, "0")
    if digits == 0:
        return sign + text
    return f"{sign}{text[:-digits]}.{text[-digits:]}"


def enclosure_json(enc: RealEnclosure, digits: int = 40) -> dict:
    """JSON form of an enclosure: exact endpoints plus a convenience midpoint.

    The decimal midpoint is display-only and never feeds back into
    computation.
    """
    return {
        "lo": f"{enc.lo.numerator}/{enc.lo.denominator}",
        "hi": f"{enc.hi.numerator}/{enc.hi.denominator}",
        "mid": decimal_string(enc.midpoint, digits),
    }
