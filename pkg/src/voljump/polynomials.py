"""Integer polynomials and certified root data.

Provides the exact characteristic polynomial of an integer matrix, real-root
isolation and refinement with rational endpoints, a cyclotomic divisibility
scan, and a certified count of roots outside the unit circle.

The unit-circle count works from floating approximations but certifies them
exactly: every approximate root gets a disk of radius deg * |p(z)| / |p'(z)|
(a classical a-posteriori bound computed in exact rational arithmetic), and
once the disks are pairwise disjoint each provably contains exactly one root.
Disks straddling the circle are settled by the inversion pairing available
for (anti-)reciprocal polynomials: if the circle-inverted disk meets no other
disk, its root coincides with its own inversion partner and lies on the
circle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd as int_gcd
from typing import TYPE_CHECKING, Iterable, Sequence

import mpmath as mp

from .errors import CertificationError, PrecisionBudgetError
from .intervals import RealEnclosure, sqrt_bounds

if TYPE_CHECKING:  # pragma: no cover
    from .transform import LatticeIsometry


@dataclass(frozen=True)
class IntPoly:
    """Univariate polynomial with exact integer coefficients, ascending order."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int]):
        values = [int(c) for c in coeffs]
        while len(values) > 1 and values[-1] == 0:
            values.pop()
        if not values:
            values = [0]
        object.__setattr__(self, "coeffs", tuple(values))

    @property
    def degree(self) -> int:
        if self.coeffs == (0,):
            return -1
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    def __call__(self, x: int | Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "IntPoly":
        if self.degree < 1:
            return IntPoly([0])
        return IntPoly(k * c for k, c in enumerate(self.coeffs) if k > 0)

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPoly(out)

    def reversed(self) -> "IntPoly":
        """x^deg * p(1/x): coefficient sequence reversed."""
        return IntPoly(reversed(self.coeffs))

    def primitive(self) -> "IntPoly":
        """Divide out the content; normalize the leading coefficient positive."""
        g = 0
        for c in self.coeffs:
            g = int_gcd(g, abs(c))
        if g == 0:
            return self
        sign = -1 if self.leading < 0 else 1
        return IntPoly(sign * c // g for c in self.coeffs)

    def divide_exact(self, divisor: "IntPoly") -> "IntPoly | None":
        """Exact quotient over the integers, or None if it does not divide."""
        if divisor.degree < 0:
            raise ZeroDivisionError("division by zero polynomial")
        if self.degree < divisor.degree:
            return None
        rem = [Fraction(c) for c in self.coeffs]
        out = [Fraction(0)] * (self.degree - divisor.degree + 1)
        dlead = Fraction(divisor.leading)
        for k in range(self.degree - divisor.degree, -1, -1):
            q = rem[k + divisor.degree] / dlead
            out[k] = q
            for j, d in enumerate(divisor.coeffs):
                rem[k + j] -= q * d
        if any(r != 0 for r in rem):
            return None
        if any(q.denominator != 1 for q in out):
            return None
        return IntPoly(int(q) for q in out)

    def __str__(self) -> str:
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            elif k == 1:
                body = "x" if mag == 1 else f"{mag}*x"
            else:
                body = f"x^{k}" if mag == 1 else f"{mag}*x^{k}"
            terms.append(("- " if c < 0 else "+ " if terms else "") + body)
        return " ".join(terms) if terms else "0"


def char_poly(m: "LatticeIsometry") -> IntPoly:
    """Exact characteristic polynomial det(xI - m) via Faddeev-LeVerrier.

    The recurrence stays in integer arithmetic; every division by k is exact
    (asserted, since the c_k are integers for an integer matrix).
    """
    rows = m.rows
    n = len(rows)
    coeffs_desc = [1]
    work = [list(r) for r in rows]
    for k in range(1, n + 1):
        trace = sum(work[i][i] for i in range(n))
        assert trace % k == 0, "Faddeev-LeVerrier divisibility violated"
        ck = -trace // k
        coeffs_desc.append(ck)
        if k < n:
            shifted = [
                [work[i][j] + (ck if i == j else 0) for j in range(n)]
                for i in range(n)
            ]
            work = [
                [sum(rows[i][l] * shifted[l][j] for l in range(n)) for j in range(n)]
                for i in range(n)
            ]
    return IntPoly(reversed(coeffs_desc))


def cauchy_root_bound(p: IntPoly) -> Fraction:
    """1 + max |a_i / a_n|: every complex root has modulus strictly below it."""
    if p.degree < 1:
        raise ValueError("root bound needs degree >= 1")
    lead = abs(p.leading)
    return 1 + max(Fraction(abs(c), lead) for c in p.coeffs[:-1])


# -- polynomial helpers over the rationals ------------------------------------


def _fraction_coeffs(p: IntPoly) -> list[Fraction]:
    return [Fraction(c) for c in p.coeffs]


def _eval(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _deflate(coeffs: Sequence[Fraction], root: Fraction) -> list[Fraction]:
    """Exact synthetic division by (x - root); the remainder must vanish."""
    desc = list(reversed(coeffs))
    out = [desc[0]]
    for c in desc[1:]:
        out.append(c + root * out[-1])
    rem = out.pop()
    assert rem == 0, "deflation at a non-root"
    return list(reversed(out))


def _taylor_shift(coeffs: Sequence[Fraction], a: Fraction) -> list[Fraction]:
    """Coefficients of p(x + a), by repeated synthetic division."""
    desc = list(reversed(coeffs))
    out: list[Fraction] = []
    while desc:
        q = [desc[0]]
        for c in desc[1:]:
            q.append(c + a * q[-1])
        out.append(q.pop())
        desc = q
    return out


def _sign_variations(coeffs: Sequence[Fraction]) -> int:
    count = 0
    prev = 0
    for c in coeffs:
        if c == 0:
            continue
        s = 1 if c > 0 else -1
        if prev and s != prev:
            count += 1
        prev = s
    return count


def _descartes_bound(coeffs: Sequence[Fraction], lo: Fraction, hi: Fraction) -> int:
    """Upper bound (equal mod 2) on the number of roots in the open (lo, hi)."""
    shifted = _taylor_shift(coeffs, lo)
    width = hi - lo
    scaled = [c * width**k for k, c in enumerate(shifted)]
    # roots in (0,1) of `scaled`; map via x -> 1/(1+x) onto (0, inf)
    transformed = _taylor_shift(list(reversed(scaled)), Fraction(1))
    return _sign_variations(transformed)


def isolate_real_roots(
    p: IntPoly, lo: Fraction, hi: Fraction, max_depth: int = 80
) -> list[tuple[Fraction, Fraction]]:
    """Disjoint isolating intervals for the roots of squarefree p in (lo, hi).

    Returns open intervals (a, b) with exactly one root each; exact rational
    roots appear as degenerate pairs (r, r).  Requires p(lo) != 0 != p(hi).
    """
    coeffs = _fraction_coeffs(p)
    if _eval(coeffs, lo) == 0 or _eval(coeffs, hi) == 0:
        raise ValueError("isolation endpoints must not be roots")
    out: list[tuple[Fraction, Fraction]] = []

    def recurse(cs: list[Fraction], a: Fraction, b: Fraction, depth: int) -> None:
        bound = _descartes_bound(cs, a, b)
        if bound == 0:
            return
        if bound == 1:
            out.append((a, b))
            return
        if depth <= 0:
            raise PrecisionBudgetError(
                f"root isolation did not terminate on ({a}, {b})"
            )
        mid = (a + b) / 2
        if _eval(cs, mid) == 0:
            reduced = _deflate(cs, mid)
            out.append((mid, mid))
            recurse(reduced, a, mid, depth - 1)
            recurse(reduced, mid, b, depth - 1)
        else:
            recurse(cs, a, mid, depth - 1)
            recurse(cs, mid, b, depth - 1)

    recurse(coeffs, lo, hi, max_depth)
    return sorted(out)


def refine_root(
    p: IntPoly, lo: Fraction, hi: Fraction, tol: Fraction
) -> RealEnclosure:
    """Shrink a sign-change bracket around a root to width <= tol by bisection."""
    f_lo = p(lo)
    f_hi = p(hi)
    if f_lo == 0:
        return RealEnclosure.exact(lo)
    if f_hi == 0:
        return RealEnclosure.exact(hi)
    if (f_lo > 0) == (f_hi > 0):
        raise CertificationError(f"no sign change on [{lo}, {hi}]")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        f_mid = p(mid)
        if f_mid == 0:
            return RealEnclosure.exact(mid)
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return RealEnclosure(lo, hi)


# -- gcd / squarefree structure ------------------------------------------------


def poly_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Primitive gcd over the integers (Euclid over Q, then normalized)."""
    fa, fb = _fraction_coeffs(a), _fraction_coeffs(b)

    def deg(c: list[Fraction]) -> int:
        for k in range(len(c) - 1, -1, -1):
            if c[k] != 0:
                return k
        return -1

    def rem(num: list[Fraction], den: list[Fraction]) -> list[Fraction]:
        num = num[:]
        dn, dd = deg(num), deg(den)
        while dn >= dd >= 0:
            q = num[dn] / den[dd]
            for j in range(dd + 1):
                num[dn - dd + j] -= q * den[j]
            num[dn] = Fraction(0)
            dn = deg(num)
        return num

    while deg(fb) >= 0:
        fa, fb = fb, rem(fa, fb)
    d = deg(fa)
    if d < 0:
        return IntPoly([0])
    denom_lcm = 1
    for c in fa[: d + 1]:
        denom_lcm = denom_lcm * c.denominator // int_gcd(denom_lcm, c.denominator)
    ints = [int(c * denom_lcm) for c in fa[: d + 1]]
    return IntPoly(ints).primitive()


def squarefree_decomposition(p: IntPoly) -> list[tuple[IntPoly, int]]:
    """Yun decomposition p ~ prod f_i^i with the f_i squarefree and coprime.

    The overall integer content and sign are dropped (irrelevant for roots).
    """
    if p.degree < 1:
        return []
    work = p.primitive()
    a = poly_gcd(work, work.derivative())
    b = work.divide_exact(a)
    assert b is not None
    if a.degree == 0:
        return [(b, 1)]
    c = work.derivative().divide_exact(a)
    assert c is not None
    d = IntPoly(
        [
            x - y
            for x, y in _zip_pad(c.coeffs, b.derivative().coeffs)
        ]
    )
    out: list[tuple[IntPoly, int]] = []
    i = 1
    while b.degree > 0:
        f = poly_gcd(b, d)
        if f.degree > 0:
            out.append((f, i))
            b_next = b.divide_exact(f)
            assert b_next is not None
            b = b_next
        if b.degree == 0:
            break
        cq = d.divide_exact(f) if f.degree > 0 else d
        assert cq is not None
        d = IntPoly([x - y for x, y in _zip_pad(cq.coeffs, b.derivative().coeffs)])
        i += 1
    return out


def _zip_pad(a: Sequence[int], b: Sequence[int]) -> list[tuple[int, int]]:
    n = max(len(a), len(b))
    return [
        (a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)
    ]


def squarefree_part(p: IntPoly) -> IntPoly:
    out = IntPoly([1])
    for factor, _ in squarefree_decomposition(p):
        out = out * factor
    return out


def strip_rational_root(p: IntPoly, root: int) -> tuple[int, IntPoly]:
    """Divide out (x - root) as often as it divides exactly; root integer."""
    count = 0
    coeffs = _fraction_coeffs(p)
    r = Fraction(root)
    while len(coeffs) > 1 and _eval(coeffs, r) == 0:
        coeffs = _deflate(coeffs, r)
        count += 1
    assert all(c.denominator == 1 for c in coeffs)
    return count, IntPoly(int(c) for c in coeffs)


def dominant_root(p: IntPoly, tol: Fraction) -> RealEnclosure:
    """Certified enclosure of the largest real root of p, which must exceed 1.

    Isolation runs on the squarefree part (so the bracketing sign change is
    guaranteed even at roots of even multiplicity in p); the enclosure is
    valid for p itself since the roots coincide.  Fails loudly when no root
    greater than 1 exists.
    """
    if p.degree < 1:
        raise CertificationError("dominant root of a constant polynomial")
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    reduced = squarefree_part(p)
    # roots exactly at 1 are not "greater than 1"; remove before isolating
    if reduced(Fraction(1)) == 0:
        _, reduced = strip_rational_root(reduced, 1)
    if reduced.degree < 1:
        raise CertificationError("no real root greater than 1")
    bound = cauchy_root_bound(reduced)
    if bound <= 1:
        raise CertificationError("no real root greater than 1")
    brackets = isolate_real_roots(reduced, Fraction(1), bound)
    if not brackets:
        raise CertificationError("no real root greater than 1")
    lo, hi = brackets[-1]
    if lo == hi:
        return RealEnclosure.exact(lo)
    return refine_root(reduced, lo, hi, tol)


# -- cyclotomic scan -----------------------------------------------------------


def totient(n: int) -> int:
    result = n
    m = n
    f = 2
    while f * f <= m:
        if m % f == 0:
            while m % f == 0:
                m //= f
            result -= result // f
        f += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> IntPoly:
    """The n-th cyclotomic polynomial, by exact division of x^n - 1."""
    if n < 1:
        raise ValueError("cyclotomic index must be positive")
    num = IntPoly([-1] + [0] * (n - 1) + [1])
    for d in range(1, n):
        if n % d == 0:
            quotient = num.divide_exact(cyclotomic(d))
            assert quotient is not None
            num = quotient
    return num


def cyclotomic_factors(p: IntPoly, search_bound: int = 200) -> list[tuple[int, int]]:
    """All cyclotomic divisors of p with multiplicities.

    Scanning n <= 200 exhausts every cyclotomic polynomial of degree <= 11
    (indeed of degree well beyond), so the scan is complete for the
    characteristic polynomials handled here.
    """
    out = []
    for n in range(1, search_bound + 1):
        if totient(n) > p.degree:
            continue
        phi = cyclotomic(n)
        mult = 0
        rest = p
        while True:
            q = rest.divide_exact(phi)
            if q is None:
                break
            mult += 1
            rest = q
        if mult:
            out.append((n, mult))
    return out


# -- certified unit-circle root count ------------------------------------------


@dataclass(frozen=True)
class RootDisk:
    """A certified disk containing exactly one root of some squarefree factor."""

    center_re: Fraction
    center_im: Fraction
    radius: Fraction
    location: str  # "inside" | "outside" | "on-circle"
    multiplicity: int


@dataclass(frozen=True)
class UnitCircleCount:
    """Certified counts of roots by position relative to the unit circle."""

    outside: int
    inside: int
    on_circle: int
    disks: tuple[RootDisk, ...]


def _mpf_to_fraction(x) -> Fraction:
    if x == 0:
        return Fraction(0)
    sign, man, exp, _ = x._mpf_
    value = Fraction(man) * Fraction(2) ** exp
    return -value if sign else value


def _eval_complex(p: IntPoly, re: Fraction, im: Fraction) -> tuple[Fraction, Fraction]:
    a, b = Fraction(0), Fraction(0)
    for c in reversed(p.coeffs):
        a, b = a * re - b * im + c, a * im + b * re
    return a, b


def _is_self_inverse(p: IntPoly) -> bool:
    """True when the root set is closed under z -> 1/z (palindromic up to sign)."""
    rev = tuple(reversed(p.coeffs))
    return rev == p.coeffs or rev == tuple(-c for c in p.coeffs)


def _rational_quotient(f: IntPoly, divisor: IntPoly) -> IntPoly:
    """Primitive integer form of f / divisor, which must divide over Q."""
    rem = [Fraction(c) for c in f.coeffs]
    out = [Fraction(0)] * (f.degree - divisor.degree + 1)
    dlead = Fraction(divisor.leading)
    for k in range(f.degree - divisor.degree, -1, -1):
        q = rem[k + divisor.degree] / dlead
        out[k] = q
        for j, d in enumerate(divisor.coeffs):
            rem[k + j] -= q * d
    assert all(r == 0 for r in rem), "inexact polynomial division"
    denom_lcm = 1
    for c in out:
        denom_lcm = denom_lcm * c.denominator // int_gcd(denom_lcm, c.denominator)
    return IntPoly(int(c * denom_lcm) for c in out).primitive()


def _profile_squarefree(
    f: IntPoly, multiplicity: int, budget: int, start_dps: int
) -> tuple[int, int, int, list[RootDisk]]:
    outside = inside = on_circle = 0
    disks: list[RootDisk] = []
    # exactly settled roots first: 0 (inside) and +-1 (on the circle)
    if f.degree > 0 and f.coeffs[0] == 0:
        inside += 1
        disks.append(RootDisk(Fraction(0), Fraction(0), Fraction(0), "inside", multiplicity))
        f = IntPoly(f.coeffs[1:])
    for r in (1, -1):
        k, f = strip_rational_root(f, r)
        if k:
            assert k == 1, "squarefree factor with repeated rational root"
            on_circle += 1
            disks.append(RootDisk(Fraction(r), Fraction(0), Fraction(0), "on-circle", multiplicity))
    if f.degree <= 0:
        return outside, inside, on_circle, disks
    if f.degree == 1:
        root = -Fraction(f.coeffs[0], f.coeffs[1])
        # |root| = 1 would force root = +-1, already stripped
        loc = "outside" if abs(root.numerator) > abs(root.denominator) else "inside"
        if loc == "outside":
            outside += 1
        else:
            inside += 1
        disks.append(RootDisk(root, Fraction(0), Fraction(0), loc, multiplicity))
        return outside, inside, on_circle, disks

    if not _is_self_inverse(f):
        # Nonrational roots on the circle come in z, 1/z = conj(z) pairs, so
        # they all divide gcd(f, reverse(f)), which is itself inversion
        # closed.  Splitting there leaves a quotient free of circle roots
        # (its straddling disks always resolve by refinement) and a part the
        # pairing argument handles.
        mirror = poly_gcd(f, f.reversed())
        if 0 < mirror.degree < f.degree:
            rest = _rational_quotient(f, mirror)
            for part in (mirror, rest):
                n_out, n_in, n_on, part_disks = _profile_squarefree(
                    part, multiplicity, budget, start_dps
                )
                outside += n_out
                inside += n_in
                on_circle += n_on
                disks.extend(part_disks)
            return outside, inside, on_circle, disks

    pairing = _is_self_inverse(f)
    deriv = f.derivative()
    degree = f.degree
    dps = start_dps
    for _ in range(budget):
        result = _attempt_disks(f, deriv, degree, dps, pairing, multiplicity)
        if result is not None:
            certified, n_out, n_in, n_on = result
            return outside + n_out, inside + n_in, on_circle + n_on, disks + certified
        dps *= 2
    raise PrecisionBudgetError(
        f"could not classify all roots of degree-{degree} factor "
        f"relative to the unit circle within the refinement budget"
    )


def _attempt_disks(f, deriv, degree, dps, pairing, multiplicity):
    with mp.workdps(dps):
        try:
            approx = mp.polyroots(
                [mp.mpf(c) for c in reversed(f.coeffs)], maxsteps=200, extraprec=4 * dps
            )
        except mp.libmp.libhyper.NoConvergence:
            return None
    centers: list[tuple[Fraction, Fraction]] = []
    radii: list[Fraction] = []
    for z in approx:
        zc = mp.mpc(z)
        re = _mpf_to_fraction(zc.real)
        im = _mpf_to_fraction(zc.imag)
        val_re, val_im = _eval_complex(f, re, im)
        der_re, der_im = _eval_complex(deriv, re, im)
        der_sq = der_re * der_re + der_im * der_im
        if der_sq == 0:
            return None
        val_sq = val_re * val_re + val_im * val_im
        radius_sq = Fraction(degree * degree) * val_sq / der_sq
        radius = sqrt_bounds(radius_sq, bits=4 * dps).hi
        centers.append((re, im))
        radii.append(radius)

    def dist_sq(i: int, j: int) -> Fraction:
        dre = centers[i][0] - centers[j][0]
        dim = centers[i][1] - centers[j][1]
        return dre * dre + dim * dim

    for i in range(degree):
        for j in range(i + 1, degree):
            gap = radii[i] + radii[j]
            if dist_sq(i, j) <= gap * gap:
                return None  # disks not certified disjoint; refine

    # disjoint disks, one per approximate root, degree many roots in total:
    # each disk contains exactly one root and every root is covered
    disks: list[RootDisk] = []
    n_out = n_in = n_on = 0
    for i in range(degree):
        re, im = centers[i]
        radius = radii[i]
        mod_sq = re * re + im * im
        if mod_sq > (1 + radius) ** 2:
            disks.append(RootDisk(re, im, radius, "outside", multiplicity))
            n_out += 1
            continue
        if radius < 1 and mod_sq < (1 - radius) ** 2:
            disks.append(RootDisk(re, im, radius, "inside", multiplicity))
            n_in += 1
            continue
        if not pairing:
            return None
        # straddling disk: invert it in the circle; if the image meets no
        # other disk, the root's inversion partner is the root itself
        denom = mod_sq - radius * radius
        if denom <= 0:
            return None
        inv_re, inv_im = re / denom, im / denom
        inv_radius = radius / denom
        for j in range(degree):
            if j == i:
                continue
            dre = inv_re - centers[j][0]
            dim = inv_im - centers[j][1]
            gap = inv_radius + radii[j]
            if dre * dre + dim * dim <= gap * gap:
                return None
        disks.append(RootDisk(re, im, radius, "on-circle", multiplicity))
        n_on += 1
    return disks, n_out, n_in, n_on


def count_roots_outside_unit_circle(
    p: IntPoly, refinement_budget: int = 10, start_dps: int = 60
) -> UnitCircleCount:
    """Certified count (with multiplicity) of roots of p with modulus > 1."""
    if p.degree < 0:
        raise ValueError("zero polynomial")
    outside = inside = on_circle = 0
    disks: list[RootDisk] = []
    for factor, mult in squarefree_decomposition(p):
        n_out, n_in, n_on, factor_disks = _profile_squarefree(
            factor, mult, refinement_budget, start_dps
        )
        assert n_out + n_in + n_on == factor.degree
        outside += mult * n_out
        inside += mult * n_in
        on_circle += mult * n_on
        disks.extend(factor_disks)
    return UnitCircleCount(outside, inside, on_circle, tuple(disks))
