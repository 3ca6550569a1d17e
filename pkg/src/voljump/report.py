"""Full verification run and the deterministic JSON artifact.

Every certificate the package can produce is evaluated here in a fixed
order; the JSON report contains exact rational interval endpoints (decimal
fields are display-only midpoints) so that two runs with the same
configuration emit byte-identical artifacts.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .config import RunConfig
from .intervals import ClassEnclosure, decimal_string, enclosure_json
from .lattice import (
    DivisorClass,
    canonical_class,
    pair,
    standard_line,
)
from .nefcheck import CheckResult, MarginRow, NefReport, full_report
from .orbit import (
    growth_profile,
    growth_ratios,
    iterate,
    max_norm_increase_start,
    orbit,
    verify_distinct,
)
from .polynomials import (
    count_roots_outside_unit_circle,
    cyclotomic_factors,
    strip_rational_root,
)
from .reference import WEIGHT_ORDER, WITNESS_COEFFS, WITNESS_TOLERANCE
from .spectral import EigenSystem, eigensystem, select_orientation
from .transform import apply, composite_T, verify_isometry

SCHEMA_VERSION = "1"

#: Seed for the randomized exact property checks; fixed for determinism.
PROPERTY_SEED = 411235813

#: Width bound for the certified zero pairings at the default 60-digit run.
FACT_WIDTH_BOUND = Fraction(1, 10**30)


def _random_class(rng: random.Random) -> DivisorClass:
    return DivisorClass(
        Fraction(rng.randint(-60, 60), rng.randint(1, 12)) for _ in range(11)
    )


def _pairing_property_checks(trials: int = 100) -> list[CheckResult]:
    rng = random.Random(PROPERTY_SEED)
    symmetric = bilinear = True
    for _ in range(trials):
        a, b, c = (_random_class(rng) for _ in range(3))
        alpha = Fraction(rng.randint(-9, 9), rng.randint(1, 7))
        beta_ = Fraction(rng.randint(-9, 9), rng.randint(1, 7))
        if pair(a, b) != pair(b, a):
            symmetric = False
        if pair(alpha * a + beta_ * b, c) != alpha * pair(a, c) + beta_ * pair(b, c):
            bilinear = False
    return [
        CheckResult("pairing symmetric on random classes", symmetric, f"{trials} trials"),
        CheckResult("pairing bilinear on random classes", bilinear, f"{trials} trials"),
    ]


def _form_preservation_check(trials: int = 100) -> CheckResult:
    rng = random.Random(PROPERTY_SEED + 1)
    t = composite_T()
    ok = all(
        pair(apply(t, a), apply(t, b)) == pair(a, b)
        for a, b in ((_random_class(rng), _random_class(rng)) for _ in range(trials))
    )
    return CheckResult(
        "composite map preserves the pairing on random classes", ok, f"{trials} trials"
    )


def _power_consistency_check(limit: int = 20) -> CheckResult:
    t = composite_T()
    seeds = (standard_line(), canonical_class())
    ok = True
    for seed in seeds:
        stepped = seed
        for n in range(limit + 1):
            if iterate(seed, n).divisor != stepped:
                ok = False
            stepped = apply(t, stepped)
    return CheckResult(
        "repeated squaring matches naive iteration", ok, f"n <= {limit}, two seeds"
    )


@dataclass(frozen=True)
class OrbitEvidence:
    horizon: int
    distinct: bool
    collision: tuple[int, int] | None
    all_self_intersection_minus_two: bool
    all_canonical_degree_zero: bool
    ratio_start: int
    ratios_converged: bool
    max_norm_increasing_from: int | None
    records: tuple


def _orbit_evidence(eigen: EigenSystem, horizon: int) -> OrbitEvidence:
    seed = standard_line()
    records = tuple(orbit(seed, horizon))
    distinct = verify_distinct(seed, horizon)
    self_ok = all(r.self_intersection == -2 for r in records)
    k_ok = all(r.canonical_degree == 0 for r in records)
    profile = growth_profile(seed, horizon)
    ratios = growth_ratios(profile)
    start = 30 if horizon >= 33 else max(3, horizon - 3)
    lam = eigen.dominant_value
    low = lam.lo * Fraction(99, 100)
    high = lam.hi * Fraction(101, 100)
    converged = all(low <= ratio <= high for n, ratio in ratios if n >= start)
    return OrbitEvidence(
        horizon=horizon,
        distinct=distinct.distinct,
        collision=distinct.collision,
        all_self_intersection_minus_two=self_ok,
        all_canonical_degree_zero=k_ok,
        ratio_start=start,
        ratios_converged=converged,
        max_norm_increasing_from=max_norm_increase_start(seed, horizon),
        records=records,
    )


@dataclass(frozen=True)
class VerificationRun:
    config: RunConfig
    eigen: EigenSystem
    nef: NefReport
    orbit: OrbitEvidence
    certificates: tuple[CheckResult, ...]
    orientation_selected: str
    orientation_candidates: tuple

    @property
    def verdict(self) -> bool:
        return all(c.passed for c in self.certificates)

    def first_failure(self) -> CheckResult | None:
        for c in self.certificates:
            if not c.passed:
                return c
        return None


def run_verification(config: RunConfig | None = None) -> VerificationRun:
    """Evaluate every certificate in a fixed order and collect the evidence."""
    cfg = config or RunConfig()
    cfg.validate()
    checks: list[CheckResult] = []

    def record(name: str, passed: bool, detail: str = "") -> None:
        checks.append(CheckResult(name, passed, detail))

    t = composite_T()
    record("composite map preserves the intersection form", verify_isometry(t).ok)
    k = canonical_class()
    record("composite map fixes the canonical class", apply(t, k) == k)
    det = t.determinant()
    record("composite map is unimodular", det in (-1, 1), f"det = {det}")

    orientation = select_orientation()
    record(
        "orientation oracle selects the fixed composite",
        True,
        orientation.selected,
    )

    eigen = eigensystem(cfg.precision_digits, cfg.refinement_budget)
    p = eigen.polynomial
    record("characteristic polynomial has degree 11", p.degree == 11)
    record(
        "characteristic polynomial anti-reciprocal",
        tuple(reversed(p.coeffs)) == tuple(-c for c in p.coeffs),
    )
    unit_mult, off_unit = strip_rational_root(p, 1)
    record("characteristic polynomial divisible by x - 1", unit_mult >= 1)
    cyclo = cyclotomic_factors(p)
    record(
        "cyclotomic scan finds only the factor at n = 1",
        [n for n, _ in cyclo] == [1],
        f"factors: {cyclo}",
    )
    circle = count_roots_outside_unit_circle(p, cfg.refinement_budget)
    record(
        "exactly one root outside the unit circle",
        circle.outside == 1,
        f"outside {circle.outside}, inside {circle.inside}, on circle {circle.on_circle}",
    )
    record(
        "reciprocal symmetry of the root layout",
        circle.outside == circle.inside,
        "counts inside and outside agree",
    )

    lam = eigen.dominant_value
    record(
        "dominant eigenvalue exceeds 1",
        lam.lo > 1,
        f"lambda = {decimal_string(lam.midpoint, 12)}...",
    )
    r = eigen.r()
    r_sum = r[0] + r[1] + r[2]
    record(
        "r1 + r2 + r3 exceeds 1",
        r_sum.lo > 1,
        f"sum = {decimal_string(r_sum.midpoint, 12)}...",
    )
    self_pairing = eigen.dominant_class.self_pair()
    record(
        "dominant class has self-intersection zero",
        self_pairing.contains_zero() and self_pairing.width <= FACT_WIDTH_BOUND,
        f"interval {enclosure_json(self_pairing, 35)['mid']}, width <= 1e-30",
    )
    k_pairing = eigen.dominant_class.pair(k)
    record(
        "dominant class pairs to zero with the canonical class",
        k_pairing.contains_zero() and k_pairing.width <= FACT_WIDTH_BOUND,
        "width <= 1e-30",
    )

    witness_ok = all(
        enc.lo >= ref - WITNESS_TOLERANCE and enc.hi <= ref + WITNESS_TOLERANCE
        for enc, ref in zip(eigen.t(), WITNESS_COEFFS)
    )
    record(
        "witness coefficients match the reference decimals",
        witness_ok,
        f"all within {float(WITNESS_TOLERANCE)}",
    )
    ts = eigen.t()
    ordered = all(
        ts[a - 1].lo > ts[b - 1].hi for a, b in zip(WEIGHT_ORDER, WEIGHT_ORDER[1:])
    )
    record("witness coefficient ordering certified", ordered, "strict descending chain")

    direct = eigen.nef_witness.multiplier_square_sum()
    ratio = eigen.line_component / (1 - eigen.line_component)
    via_identity = 1 - 2 * ratio.square()
    record(
        "square-sum identity certified",
        direct.overlaps(via_identity)
        and direct.width <= FACT_WIDTH_BOUND
        and via_identity.width <= FACT_WIDTH_BOUND,
        "both evaluations overlap at width <= 1e-30",
    )

    nef = full_report(eigen)
    checks.extend(nef.checks)

    orbit_data = _orbit_evidence(eigen, cfg.orbit_horizon)
    record(
        "orbit classes pairwise distinct",
        orbit_data.distinct,
        f"horizon {orbit_data.horizon}",
    )
    record(
        "orbit self-intersections all -2",
        orbit_data.all_self_intersection_minus_two,
    )
    record("orbit canonical degrees all 0", orbit_data.all_canonical_degree_zero)
    record(
        "orbit growth ratio converges to the eigenvalue",
        orbit_data.ratios_converged,
        f"within 1% from step {orbit_data.ratio_start}",
    )
    record(
        "orbit max-norm eventually strictly increasing",
        orbit_data.max_norm_increasing_from is not None,
        f"from step {orbit_data.max_norm_increasing_from}",
    )

    checks.extend(_pairing_property_checks())
    checks.append(_form_preservation_check())
    checks.append(_power_consistency_check())

    return VerificationRun(
        config=cfg,
        eigen=eigen,
        nef=nef,
        orbit=orbit_data,
        certificates=tuple(checks),
        orientation_selected=orientation.selected,
        orientation_candidates=orientation.assessments,
    )


# -- JSON assembly ---------------------------------------------------------------


def _row_json(row: MarginRow, digits: int) -> dict:
    return {
        "d": row.candidate.degree,
        "a": list(row.candidate.mults),
        "margin": enclosure_json(row.margin, digits),
        "exact_zero": row.exact_zero,
    }


def _class_enclosure_json(enc: ClassEnclosure, digits: int) -> list[dict]:
    return [enclosure_json(c, digits) for c in enc.coeffs]


def build_report(run: VerificationRun) -> dict:
    """The complete JSON artifact for one verification run."""
    cfg = run.config
    digits = min(cfg.precision_digits, 40)
    eigen = run.eigen
    unit_mult, off_unit = strip_rational_root(eigen.polynomial, 1)
    circle = count_roots_outside_unit_circle(eigen.polynomial, cfg.refinement_budget)
    return {
        "schema_version": SCHEMA_VERSION,
        "config": {
            "precision_digits": cfg.precision_digits,
            "orbit_horizon": cfg.orbit_horizon,
            "refinement_budget": cfg.refinement_budget,
        },
        "verdict": "pass" if run.verdict else "fail",
        "certificates": [
            {"name": c.name, "passed": c.passed, "detail": c.detail}
            for c in run.certificates
        ],
        "transform": {
            "matrix": [list(row) for row in eigen.transform.rows],
            "determinant": eigen.transform.determinant(),
            "orientation": {
                "selected": run.orientation_selected,
                "candidates": [
                    {"name": a.name, "matches": a.matches, "detail": a.detail}
                    for a in run.orientation_candidates
                ],
            },
        },
        "charpoly": {
            "coefficients_ascending": list(eigen.polynomial.coeffs),
            "unit_root_multiplicity": unit_mult,
            "off_unit_factor_ascending": list(off_unit.coeffs),
            "cyclotomic_factors": [list(f) for f in cyclotomic_factors(eigen.polynomial)],
            "roots": {
                "outside_unit_circle": circle.outside,
                "inside_unit_circle": circle.inside,
                "on_unit_circle": circle.on_circle,
            },
        },
        "eigen": {
            "lambda": enclosure_json(eigen.dominant_value, digits),
            "dominant_class": _class_enclosure_json(eigen.dominant_class, digits),
            "r": [enclosure_json(e, digits) for e in eigen.r()],
            "beta": enclosure_json(eigen.line_component, digits),
            "t": [enclosure_json(e, digits) for e in eigen.t()],
            "pair_self": enclosure_json(eigen.dominant_class.self_pair(), digits),
            "pair_canonical": enclosure_json(
                eigen.dominant_class.pair(canonical_class()), digits
            ),
        },
        "nef": {
            "degree_one": [_row_json(r, digits) for r in run.nef.degree_one],
            "degree_two": {
                "count": run.nef.degree_two_count,
                "minimum": _row_json(run.nef.degree_two_minimum, digits),
            },
            "degrees": [
                {
                    "degree": s.degree,
                    "candidates": s.candidate_count,
                    "extremes": s.extreme_count,
                    "minimum": _row_json(s.minimum, digits),
                    "extreme_rows": [_row_json(r, digits) for r in s.extreme_rows],
                }
                for s in run.nef.degrees
            ],
            "cutoff": run.nef.cutoff,
            "cutoff_checked_through": run.nef.cutoff_checked_through,
            "l_squared": enclosure_json(run.nef.bigness.witness_self_pairing, digits),
            "volume_lower_bound": enclosure_json(
                run.nef.bigness.volume_lower_bound, digits
            ),
            "zero_witnesses": [_row_json(r, digits) for r in run.nef.zero_witnesses],
            "reference_rows": {
                "total": run.nef.reference_rows_total,
                "matched": run.nef.reference_rows_matched,
            },
            "extra_extreme_rows": [
                _row_json(r, digits) for r in run.nef.extra_extreme_rows
            ],
        },
        "orbit": {
            "seed": standard_line().to_json_array(),
            "horizon": run.orbit.horizon,
            "distinct": run.orbit.distinct,
            "ratio_start": run.orbit.ratio_start,
            "ratios_converged": run.orbit.ratios_converged,
            "max_norm_increasing_from": run.orbit.max_norm_increasing_from,
            "records": [
                {
                    "n": r.n,
                    "class": r.divisor.to_json_array(),
                    "self_intersection": f"{r.self_intersection.numerator}/{r.self_intersection.denominator}",
                    "canonical_degree": f"{r.canonical_degree.numerator}/{r.canonical_degree.denominator}",
                }
                for r in run.orbit.records
            ],
        },
    }


def render_report_json(run: VerificationRun) -> str:
    return json.dumps(build_report(run), indent=2, sort_keys=True) + "\n"


def load_schema() -> dict:
    text = resources.files("voljump.schemas").joinpath("report-v1.json").read_text()
    return json.loads(text)
