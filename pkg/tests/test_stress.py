"""Exercise the certified machinery on inputs away from the main pipeline."""

from fractions import Fraction

import mpmath as mp

from voljump.polynomials import (
    IntPoly,
    char_poly,
    count_roots_outside_unit_circle,
    cyclotomic,
    cyclotomic_factors,
    dominant_root,
    isolate_real_roots,
    strip_rational_root,
)
from voljump.transform import cremona_isometry, exceptional_shift


def one_slot_candidate():
    """The rejected one-slot-rotation reading; a genuinely different isometry."""
    return cremona_isometry(1, 2, 3) @ exceptional_shift(1)


def test_one_slot_candidate_charpoly_structure():
    p = char_poly(one_slot_candidate())
    assert p.degree == 11
    assert tuple(reversed(p.coeffs)) == tuple(-c for c in p.coeffs)
    assert p(1) == 0


def test_one_slot_candidate_dominant_root_against_mpmath():
    p = char_poly(one_slot_candidate())
    lam = dominant_root(p, Fraction(1, 10**40))
    assert lam.lo > 1
    with mp.workdps(60):
        roots = mp.polyroots(
            [mp.mpf(c) for c in reversed(p.coeffs)], maxsteps=200, extraprec=200
        )
        top = max((r.real for r in roots if abs(r.imag) < mp.mpf("1e-30")), default=None)
        assert top is not None
        assert abs(top - mp.mpf(float(lam.midpoint))) < mp.mpf("1e-12")
    # a smaller dominant growth rate than the selected composite
    assert lam.hi < Fraction(12, 10)


def test_one_slot_candidate_unit_circle_profile():
    p = char_poly(one_slot_candidate())
    count = count_roots_outside_unit_circle(p)
    assert count.outside == count.inside == 1
    assert count.on_circle == 9
    # the off-unit factor carries no cyclotomic piece either
    assert cyclotomic_factors(p) == [(1, 1)]


def test_isolation_separates_close_roots():
    # (10x - 21)(10x - 22): roots 2.1 and 2.2
    p = IntPoly([21, -10]) * IntPoly([22, -10])
    brackets = isolate_real_roots(p, Fraction(2), Fraction(3))
    assert len(brackets) == 2
    (a1, b1), (a2, b2) = brackets
    assert a1 <= Fraction(21, 10) <= b1
    assert a2 <= Fraction(22, 10) <= b2
    assert b1 <= a2


def test_isolation_handles_exact_midpoint_roots():
    # roots at 3/2 (the first bisection midpoint of (1, 2)) and nearby
    p = IntPoly([3, -2]) * IntPoly([8, -5])  # roots 3/2 and 8/5
    brackets = isolate_real_roots(p, Fraction(1), Fraction(2))
    assert len(brackets) == 2
    covered = [any(a <= root <= b for a, b in brackets)
               for root in (Fraction(3, 2), Fraction(8, 5))]
    assert all(covered)


def test_unit_circle_count_on_products():
    base = char_poly(one_slot_candidate())
    _, off_unit = strip_rational_root(base, 1)
    golden = IntPoly([-1, -1, 1])  # x^2 - x - 1
    product = off_unit * golden * cyclotomic(7)
    count = count_roots_outside_unit_circle(product)
    assert count.outside == 2  # one Salem-like root, one golden ratio
    assert count.inside == 2
    assert count.on_circle == 8 + 6


def test_unit_circle_count_with_repeated_factors():
    golden = IntPoly([-1, -1, 1])
    squared = golden * golden * IntPoly([1, 1])  # (x^2-x-1)^2 (x+1)
    count = count_roots_outside_unit_circle(squared)
    assert count.outside == 2
    assert count.inside == 2
    assert count.on_circle == 1
