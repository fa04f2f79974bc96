"""Seeded property suite driving the package's exactness guarantees.

Every check is exact (Fraction equality or inequality, no tolerances) and
every random draw comes from one `random.Random(seed)` threaded through the
criteria in a fixed order, so a report is a pure function of
(seed, trial_scale, max_atoms) and repeated runs are byte-identical.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .aggregation import average_landscape, compare_average_landscapes, rank_k_transform
from .inversion import landscape_quadrant_mass, reconstruct, reconstruct_signed
from .landscape import (
    Band,
    Landscape,
    Profile,
    compute_landscape,
    landscape_value,
    l1_norm,
    validate_landscape,
)
from .measures import PersistenceMeasure, Point, Quadrant, SignedMeasure
from .transport import StabilityReport, check_stability, wasserstein_bruteforce, wasserstein_distance

__all__ = [
    "CriterionResult",
    "SuiteReport",
    "run_suite",
    "random_rational",
    "random_point",
    "random_measure",
    "random_diagram",
    "counterexample_level_monotone",
    "counterexample_unit_slopes",
    "counterexample_rect_nonnegative",
]


# -- random instance generators ------------------------------------------------


def random_rational(rng: random.Random, lo: int, hi: int, max_den: int = 8) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(lo * den, hi * den), den)


def random_point(rng: random.Random, coord_hi: int = 10, max_den: int = 8) -> Point:
    while True:
        den_b = rng.randint(1, max_den)
        birth = Fraction(rng.randint(0, coord_hi * den_b - 1), den_b)
        den_p = rng.randint(1, max_den)
        max_num = int((coord_hi - birth) * den_p)
        if max_num >= 1:
            persistence = Fraction(rng.randint(1, max_num), den_p)
            return Point(birth, birth + persistence)


def random_measure(
    rng: random.Random,
    max_atoms: int,
    *,
    min_atoms: int = 1,
    weight_hi: int = 4,
    weight_den: int = 8,
    coord_hi: int = 10,
    coord_den: int = 8,
    share_coordinates: bool = False,
) -> PersistenceMeasure:
    n = rng.randint(min_atoms, max_atoms)
    atoms = []
    points: list[Point] = []
    for _ in range(n):
        p = random_point(rng, coord_hi, coord_den)
        if share_coordinates and points:
            roll = rng.random()
            other = rng.choice(points)
            if roll < 0.25:
                p = other
            elif roll < 0.45 and other.birth < p.death:
                p = Point(other.birth, p.death)
            elif roll < 0.65 and p.birth < other.death:
                p = Point(p.birth, other.death)
        points.append(p)
        den = rng.randint(1, weight_den)
        weight = Fraction(rng.randint(1, weight_hi * den), den)
        atoms.append((p, weight))
    return PersistenceMeasure(atoms)


def random_diagram(
    rng: random.Random,
    max_atoms: int,
    *,
    min_atoms: int = 1,
    weight_hi: int = 2,
    coord_hi: int = 10,
    coord_den: int = 8,
) -> PersistenceMeasure:
    n = rng.randint(min_atoms, max_atoms)
    return PersistenceMeasure(
        [(random_point(rng, coord_hi, coord_den), rng.randint(1, weight_hi)) for _ in range(n)]
    )


# -- hand-built property counterexamples ---------------------------------------


def counterexample_level_monotone() -> Landscape:
    """Second band exceeds the first; the other three properties hold."""
    return Landscape(
        [
            Band(0, 1, Profile([(0, 0), (1, 1), (2, 0)])),
            Band(1, 2, Profile([(0, 0), (Fraction(3, 2), Fraction(3, 2)), (3, 0)])),
        ]
    )


def counterexample_unit_slopes() -> Landscape:
    """Half-unit slopes: 1-Lipschitz is violated only in the slope set sense
    for the finite-support image; rectangle masses stay nonnegative."""
    return Landscape([Band(0, 1, Profile([(0, 0), (2, 1), (4, 0)]))])


def counterexample_rect_nonnegative() -> Landscape:
    """Monotone unit-slope bands whose induced mass turns negative.

    The second band carries a small peak at t=7/2 that does not sit over
    the crossing tent of the first band's two bumps, so the cell
    [3, 13/4) x (15/4, 4] of the corner grid receives mass -1.
    """
    first = Profile([(0, 0), (2, 2), (Fraction(7, 2), Fraction(1, 2)), (4, 1), (5, 0)])
    second = Profile([(Fraction(13, 4), 0), (Fraction(7, 2), Fraction(1, 4)), (Fraction(15, 4), 0)])
    return Landscape([Band(0, 1, first), Band(1, 2, second)])


# -- report plumbing -----------------------------------------------------------


@dataclass(frozen=True)
class CriterionResult:
    index: int
    name: str
    passed: bool
    detail: str

    def render(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{self.index:2d} {self.name:<24s} {status}  {self.detail}"


@dataclass(frozen=True)
class SuiteReport:
    seed: int
    trial_scale: float
    max_atoms: int
    results: tuple[CriterionResult, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def render(self) -> str:
        lines = [
            "cpland property suite",
            f"seed={self.seed} trial-scale={self.trial_scale} max-atoms={self.max_atoms}",
        ]
        lines.extend(r.render() for r in self.results)
        lines.append(f"overall {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines) + "\n"


def _scaled(base: int, trial_scale: float) -> int:
    return max(1, round(base * trial_scale))


# -- criteria ------------------------------------------------------------------


def _probe_level(rng: random.Random, total: Fraction) -> Fraction:
    hi = int(total) + 2
    den = rng.randint(1, 16)
    return Fraction(rng.randint(1, hi * den), den)


def _probe_abscissa(rng: random.Random, m: PersistenceMeasure) -> Fraction:
    if m.support and rng.random() < 0.3:
        p = rng.choice(m.support)
        return rng.choice([p.birth, p.death, (p.birth + p.death) / 2])
    return random_rational(rng, -1, 11, 16)


def criterion_oracle_equivalence(
    rng: random.Random, measures: Sequence[PersistenceMeasure], probes_per: int
) -> tuple[CriterionResult, list[Landscape]]:
    landscapes = []
    checked = 0
    witness: Optional[str] = None
    for m in measures:
        ls = compute_landscape(m)
        landscapes.append(ls)
        if witness is not None:
            continue
        for _ in range(probes_per):
            a = _probe_level(rng, m.total_mass)
            t = _probe_abscissa(rng, m)
            checked += 1
            if ls.value(a, t) != landscape_value(m, a, t):
                witness = f"mismatch at a={a}, t={t} on measure with {len(m)} atoms"
                break
    detail = f"{len(measures)} measures x {probes_per} probes"
    if witness:
        detail += f"; {witness}"
    return (
        CriterionResult(1, "oracle-equivalence", witness is None, detail),
        landscapes,
    )


def criterion_landscape_axioms(landscapes: Sequence[Landscape]) -> CriterionResult:
    witness: Optional[str] = None
    for i, ls in enumerate(landscapes):
        report = validate_landscape(ls)
        if not report.ok:
            witness = f"computed landscape {i} failed: {'; '.join(report.failures())}"
            break
    if witness is None:
        expectations = [
            (counterexample_level_monotone(), "level_monotone"),
            (counterexample_unit_slopes(), "unit_slopes"),
            (counterexample_rect_nonnegative(), "rect_nonnegative"),
        ]
        names = ("level_monotone", "unit_slopes", "left_continuous", "rect_nonnegative")
        for ls, expected in expectations:
            report = validate_landscape(ls)
            failed = [n for n in names if not getattr(report, n).passed]
            if failed != [expected]:
                witness = f"counterexample for {expected} failed {failed}"
                break
    if witness is None:
        # Left-discontinuity is unrepresentable: bands with a gap must be rejected.
        try:
            Landscape(
                [
                    Band(0, 1, Profile([(0, 0), (1, 1), (2, 0)])),
                    Band(2, 3, Profile([(0, 0), (1, 1), (2, 0)])),
                ]
            )
            witness = "gap between bands was not rejected"
        except ValueError:
            pass
    detail = f"{len(landscapes)} computed landscapes + 3 counterexamples"
    if witness:
        detail += f"; {witness}"
    return CriterionResult(2, "landscape-axioms", witness is None, detail)


def criterion_quadrant_inverse(
    rng: random.Random,
    measures: Sequence[PersistenceMeasure],
    landscapes: Sequence[Landscape],
    random_probes: int,
) -> CriterionResult:
    witness: Optional[str] = None
    probes_done = 0
    for m, ls in zip(measures, landscapes):
        probes: list[tuple[Fraction, Fraction]] = []
        coords = sorted(set(m.births) | set(m.deaths))
        for u in m.births:
            for v in m.deaths:
                if u <= v:
                    probes.append(((u + v) / 2, (v - u) / 2))
        probes.extend((x, Fraction(0)) for x in coords)
        for _ in range(random_probes):
            t = random_rational(rng, -1, 11, 8)
            h = random_rational(rng, 0, 6, 8)
            probes.append((t, h))
        for t, h in probes:
            probes_done += 1
            expected = m.quadrant_mass(Quadrant(t, h))
            got = landscape_quadrant_mass(ls, t, h)
            if expected != got:
                witness = f"quadrant (t={t}, h={h}): measure {expected} vs landscape {got}"
                break
        if witness:
            break
    detail = f"{probes_done} probes over {len(measures)} measures"
    if witness:
        detail += f"; {witness}"
    return CriterionResult(3, "quadrant-mass-inverse", witness is None, detail)


def criterion_round_trip(rng: random.Random, trials: int, max_atoms: int) -> CriterionResult:
    witness: Optional[str] = None
    for i in range(trials):
        m = random_measure(
            rng,
            max_atoms,
            min_atoms=0 if i % 17 == 0 else 1,
            weight_hi=10,
            share_coordinates=True,
        )
        recovered = reconstruct(compute_landscape(m))
        if recovered != m:
            witness = f"trial {i}: {len(m)} atoms not recovered"
            break
    detail = f"{trials} measures (shared coordinates, weights up to 10)"
    if witness:
        detail += f"; {witness}"
    return CriterionResult(4, "round-trip", witness is None, detail)


def criterion_stability(
    rng: random.Random,
    pairs: int,
    empty_cases: int,
    stability_fn: Callable[[PersistenceMeasure, PersistenceMeasure], StabilityReport]
    = check_stability,
) -> CriterionResult:
    witness: Optional[str] = None
    for i in range(pairs):
        m1 = random_measure(rng, 6, min_atoms=0, weight_hi=3)
        m2 = random_measure(rng, 6, min_atoms=0, weight_hi=3)
        report = stability_fn(m1, m2)
        if not report.holds:
            witness = f"pair {i}: l1={report.l1} > bound={report.bound}"
            break
    if witness is None:
        empty = PersistenceMeasure()
        for i in range(empty_cases):
            m = random_measure(rng, 6, weight_hi=3)
            report = stability_fn(m, empty)
            if not (report.holds and report.l1 == report.bound):
                witness = f"empty case {i}: l1={report.l1} vs bound={report.bound}"
                break
            norm = l1_norm(compute_landscape(m))
            closed_form = sum(
                (w * p.persistence**2 / 4 for p, w in m.atoms.items()), Fraction(0)
            )
            if norm != closed_form:
                witness = f"empty case {i}: norm {norm} != closed form {closed_form}"
                break
    detail = f"{pairs} random pairs + {empty_cases} equality cases"
    if witness:
        detail += f"; {witness}"
    return CriterionResult(5, "l1-stability", witness is None, detail)


def _random_unit_bounded(rng: random.Random, max_units: int) -> PersistenceMeasure:
    den = rng.choice([1, 1, 2])
    remaining = rng.randint(0, max_units)
    atoms = []
    while remaining > 0:
        units = rng.randint(1, remaining)
        atoms.append((random_point(rng), Fraction(units, den)))
        remaining -= units
    return PersistenceMeasure(atoms)


def criterion_solver_vs_bruteforce(rng: random.Random, instances: int) -> CriterionResult:
    witness: Optional[str] = None
    for i in range(instances):
        m1 = _random_unit_bounded(rng, 5)
        m2 = _random_unit_bounded(rng, 5)
        cost, _ = wasserstein_distance(m1, m2)
        brute = wasserstein_bruteforce(m1, m2)
        if cost != brute:
            witness = f"instance {i}: solver {cost} vs brute force {brute}"
            break
    detail = f"{instances} instances with <= 5 units per side"
    if witness:
        detail += f"; {witness}"
    return CriterionResult(6, "solver-vs-bruteforce", witness is None, detail)


def criterion_scaling(rng: random.Random, trials: int) -> CriterionResult:
    witness: Optional[str] = None
    for i in range(trials):
        m1 = random_measure(rng, 5, weight_hi=3)
        m2 = random_measure(rng, 5, min_atoms=0, weight_hi=3)
        c = Fraction(rng.randint(1, 80), rng.randint(1, 8))
        scaled_landscape = compute_landscape(m1.scale(c))
        base_landscape = compute_landscape(m1)
        for _ in range(5):
            a = _probe_level(rng, m1.total_mass * c)
            t = _probe_abscissa(rng, m1)
            if scaled_landscape.value(a, t) != base_landscape.value(a / c, t):
                witness = f"trial {i}: landscape scaling fails at a={a}, t={t}, c={c}"
                break
        if witness:
            break
        base_cost, _ = wasserstein_distance(m1, m2)
        scaled_cost, _ = wasserstein_distance(m1.scale(c), m2.scale(c))
        if scaled_cost != c * base_cost:
            witness = f"trial {i}: transport scaling fails for c={c}"
            break
    detail = f"{trials} (measure, measure, c) triples"
    if witness:
        detail += f"; {witness}"
    return CriterionResult(7, "scaling-identities", witness is None, detail)


def _dominance_family(
    rng: random.Random, level: int, n_samples: int, identical: bool
) -> list[PersistenceMeasure]:
    def cluster_point() -> Point:
        birth = Fraction(rng.randint(0, 24), 8)
        death = Fraction(rng.randint(56, 80), 8)
        return Point(birth, death)

    def one_sample() -> PersistenceMeasure:
        points: set[Point] = set()
        while len(points) < level:
            points.add(cluster_point())
        atoms = [(p, 1) for p in points]
        for _ in range(rng.randint(0, 2)):
            birth = Fraction(rng.randint(64, 76), 8)
            atoms.append((Point(birth, birth + Fraction(rng.randint(1, 4), 8)), 1))
        return PersistenceMeasure(atoms)

    if identical:
        sample = one_sample()
        return [sample] * n_samples
    return [one_sample() for _ in range(n_samples)]


def criterion_average_dominance(rng: random.Random, families: int) -> CriterionResult:
    witness: Optional[str] = None
    for i in range(families):
        level = 1 + i % 3
        identical = i % 10 == 0
        samples = _dominance_family(rng, level, rng.randint(2, 5), identical)
        report = compare_average_landscapes(samples, level, 5, 2)
        if not report.hypothesis_distinct:
            witness = f"family {i}: construction broke the exactly-{level} hypothesis"
            break
        if not report.average_dominates:
            witness = f"family {i}: cpl={report.cpl_value} > apl={report.apl_value}"
            break
        if identical and report.cpl_value != report.apl_value:
            witness = f"family {i}: identical samples but cpl != apl"
            break
    detail = f"{families} families (levels 1..3, with identical-sample equality cases)"
    if witness:
        detail += f"; {witness}"
    return CriterionResult(8, "average-dominance", witness is None, detail)


def criterion_rank_shift(rng: random.Random, trials: int) -> CriterionResult:
    witness: Optional[str] = None
    for i in range(trials):
        m = random_diagram(rng, 6, weight_hi=3)
        k = rng.randint(1, int(m.total_mass))
        shifted = compute_landscape(rank_k_transform(m, k))
        base = compute_landscape(m)
        for _ in range(5):
            a = _probe_level(rng, m.total_mass)
            t = _probe_abscissa(rng, m)
            if shifted.value(a, t) != base.value(a + k - 1, t):
                witness = f"trial {i}: shift identity fails at a={a}, t={t}, k={k}"
                break
        if witness:
            break
    detail = f"{trials} (diagram, k, probe) trials"
    if witness:
        detail += f"; {witness}"
    return CriterionResult(9, "rank-k-shift", witness is None, detail)


def criterion_signed_round_trip(rng: random.Random, trials: int) -> CriterionResult:
    witness: Optional[str] = None
    for i in range(trials):
        pos = random_measure(rng, 5, weight_hi=3)
        neg_atoms = {}
        for p, w in random_measure(rng, 5, min_atoms=0, weight_hi=3).atoms.items():
            if p not in pos.atoms:
                neg_atoms[p] = w
        neg = PersistenceMeasure(neg_atoms)
        expected = SignedMeasure(pos, neg)
        recovered = reconstruct_signed(compute_landscape(pos), compute_landscape(neg))
        if recovered != expected:
            witness = f"trial {i}: Jordan pair not recovered"
            break
    detail = f"{trials} signed measures"
    if witness:
        detail += f"; {witness}"
    return CriterionResult(10, "signed-round-trip", witness is None, detail)


# -- driver --------------------------------------------------------------------


def run_suite(seed: int = 42, trial_scale: float = 1.0, max_atoms: int = 30) -> SuiteReport:
    """Run criteria 1..10 and return a deterministic report."""
    rng = random.Random(seed)
    results: list[CriterionResult] = []

    n_measures = _scaled(200, trial_scale)
    measures = [
        random_measure(rng, max_atoms, min_atoms=0 if i % 13 == 0 else 1)
        for i in range(n_measures)
    ]
    result, landscapes = criterion_oracle_equivalence(rng, measures, _scaled(50, trial_scale))
    results.append(result)
    results.append(criterion_landscape_axioms(landscapes))
    results.append(
        criterion_quadrant_inverse(rng, measures, landscapes, _scaled(100, trial_scale))
    )
    results.append(criterion_round_trip(rng, _scaled(200, trial_scale), max_atoms))
    results.append(
        criterion_stability(rng, _scaled(1000, trial_scale), _scaled(50, trial_scale))
    )
    results.append(criterion_solver_vs_bruteforce(rng, _scaled(500, trial_scale)))
    results.append(criterion_scaling(rng, _scaled(100, trial_scale)))
    results.append(criterion_average_dominance(rng, _scaled(100, trial_scale)))
    results.append(criterion_rank_shift(rng, _scaled(100, trial_scale)))
    results.append(criterion_signed_round_trip(rng, _scaled(100, trial_scale)))
    return SuiteReport(
        seed=seed, trial_scale=trial_scale, max_atoms=max_atoms, results=tuple(results)
    )
