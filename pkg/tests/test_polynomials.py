from fractions import Fraction
from math import comb

import mpmath as mp
import pytest

from voljump.errors import CertificationError
from voljump.polynomials import (
    IntPoly,
    cauchy_root_bound,
    char_poly,
    count_roots_outside_unit_circle,
    cyclotomic,
    cyclotomic_factors,
    dominant_root,
    isolate_real_roots,
    squarefree_decomposition,
    squarefree_part,
    strip_rational_root,
    totient,
)
from voljump.transform import LatticeIsometry, composite_T


def poly_from_desc(*desc):
    return IntPoly(reversed(desc))


def x_minus(r):
    return IntPoly([-r, 1])


def poly_power(p, n):
    out = IntPoly([1])
    for _ in range(n):
        out = out * p
    return out


# -- characteristic polynomial ---------------------------------------------------


def test_char_poly_identity_is_binomial():
    p = char_poly(LatticeIsometry.identity())
    # (x - 1)^11 expanded
    expected = IntPoly(comb(11, k) * (-1) ** (11 - k) for k in range(12))
    assert p == expected


def _char_poly_by_interpolation(m):
    """Independent oracle: exact determinants det(kI - m) at 12 integer points,
    then Lagrange interpolation over the rationals."""
    points = list(range(-5, 7))
    values = []
    for k in points:
        shifted = LatticeIsometry(
            tuple((k if i == j else 0) - m.rows[i][j] for j in range(11))
            for i in range(11)
        )
        values.append(shifted.determinant())
    coeffs = [Fraction(0)] * 12
    for i, (xi, yi) in enumerate(zip(points, values)):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(points):
            if j == i:
                continue
            new = [Fraction(0)] * (len(basis) + 1)
            for k, c in enumerate(basis):
                new[k] += c * (-xj)
                new[k + 1] += c
            basis = new
            denom *= xi - xj
        scale = Fraction(yi) / denom
        for k, c in enumerate(basis):
            coeffs[k] += scale * c
    assert all(c.denominator == 1 for c in coeffs)
    return IntPoly(int(c) for c in coeffs)


def test_char_poly_matches_interpolation_oracle():
    t = composite_T()
    assert char_poly(t) == _char_poly_by_interpolation(t)


def test_char_poly_of_composite_has_root_one(eigen):
    p = eigen.polynomial
    assert p.degree == 11
    assert p(1) == 0


def test_char_poly_anti_reciprocal(eigen):
    p = eigen.polynomial
    assert tuple(reversed(p.coeffs)) == tuple(-c for c in p.coeffs)


# -- root isolation and the dominant root ----------------------------------------


def test_dominant_root_simple_cases():
    p = x_minus(2) * poly_power(x_minus(1), 10)
    enclosure = dominant_root(p, Fraction(1, 10**20))
    assert enclosure.contains(2)
    assert enclosure.width <= Fraction(1, 10**20)


def test_dominant_root_rejects_all_unit_roots():
    with pytest.raises(CertificationError):
        dominant_root(poly_power(x_minus(1), 11), Fraction(1, 1000))


def test_dominant_root_of_composite_charpoly(eigen):
    lam = dominant_root(eigen.polynomial, Fraction(1, 10**60))
    assert lam.width <= Fraction(1, 10**60)
    assert lam.lo > 1
    # sign-change certificate on the squarefree non-unit factor
    _, factor = strip_rational_root(squarefree_part(eigen.polynomial), 1)
    lo_sign = factor(lam.lo) > 0
    hi_sign = factor(lam.hi) > 0
    assert lo_sign != hi_sign
    # independent approximation route (mpmath polyroots)
    with mp.workdps(80):
        roots = mp.polyroots(
            [mp.mpf(c) for c in reversed(eigen.polynomial.coeffs)],
            maxsteps=200,
            extraprec=200,
        )
        top = max(abs(r) for r in roots)
        assert abs(top - mp.mpf(float(lam.midpoint))) < mp.mpf("1e-12")


def test_isolation_finds_all_roots():
    p = x_minus(2) * x_minus(3) * x_minus(5)
    intervals = isolate_real_roots(p, Fraction(1), Fraction(6))
    assert len(intervals) == 3
    for (lo, hi), root in zip(intervals, (2, 3, 5)):
        assert lo <= root <= hi


def test_cauchy_bound_dominates_roots():
    p = x_minus(2) * x_minus(-7)
    assert cauchy_root_bound(p) > 7


# -- squarefree structure ---------------------------------------------------------


def test_squarefree_decomposition():
    p = poly_power(x_minus(1), 2) * x_minus(2)
    decomp = squarefree_decomposition(p)
    assert sorted((f.coeffs, m) for f, m in decomp) == [
        ((-2, 1), 1),
        ((-1, 1), 2),
    ]


def test_strip_rational_root():
    p = poly_power(x_minus(1), 3) * x_minus(4)
    count, rest = strip_rational_root(p, 1)
    assert count == 3
    assert rest == x_minus(4)


# -- cyclotomic scan ---------------------------------------------------------------


def test_small_cyclotomic_polynomials():
    assert cyclotomic(1) == IntPoly([-1, 1])
    assert cyclotomic(2) == IntPoly([1, 1])
    assert cyclotomic(3) == IntPoly([1, 1, 1])
    assert cyclotomic(6) == IntPoly([1, -1, 1])
    assert cyclotomic(12) == IntPoly([1, 0, -1, 0, 1])


def test_cyclotomic_factors_examples():
    assert cyclotomic_factors(poly_power(x_minus(1), 2)) == [(1, 2)]
    assert cyclotomic_factors(IntPoly([1, 1, 1])) == [(3, 1)]
    mixed = cyclotomic(1) * cyclotomic(4) * cyclotomic(4) * x_minus(3)
    assert cyclotomic_factors(mixed) == [(1, 1), (4, 2)]


def test_cyclotomic_scan_of_composite(eigen):
    assert cyclotomic_factors(eigen.polynomial) == [(1, 1)]


def test_totient_values():
    assert [totient(n) for n in (1, 2, 3, 4, 6, 12, 30)] == [1, 1, 2, 2, 2, 4, 8]


# -- unit-circle counting -----------------------------------------------------------


def test_count_outside_golden_ratio():
    count = count_roots_outside_unit_circle(IntPoly([-1, -1, 1]))  # x^2 - x - 1
    assert (count.outside, count.inside, count.on_circle) == (1, 1, 0)


def test_count_outside_all_unit_roots():
    count = count_roots_outside_unit_circle(poly_power(x_minus(1), 11))
    assert count.outside == 0
    assert count.on_circle == 11


def test_count_outside_mixed_rational_roots():
    count = count_roots_outside_unit_circle(x_minus(2) * x_minus(-1))
    assert (count.outside, count.inside, count.on_circle) == (1, 0, 1)


def test_count_outside_cyclotomic():
    count = count_roots_outside_unit_circle(cyclotomic(5))
    assert (count.outside, count.inside, count.on_circle) == (0, 0, 4)


def test_count_outside_composite_charpoly(eigen):
    count = count_roots_outside_unit_circle(eigen.polynomial)
    assert count.outside == 1
    assert count.inside == 1
    assert count.on_circle == 9
    assert sum(1 for d in count.disks if d.location == "outside") == 1
