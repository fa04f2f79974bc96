"""Averaging landscapes of diagram samples and level-shift transforms.

The average landscape of diagrams alpha_1..alpha_N is the pointwise mean of
their landscapes, taken level by level on integer levels; it generally
differs from the landscape of the mean measure (1/N) sum alpha_i, which
lives at fractional mass levels.  compare_average_landscapes reports both
values at an integer level together with the hypothesis under which the
average dominates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .inversion import reconstruct
from .landscape import Band, Landscape, Profile, compute_landscape
from .measures import PersistenceMeasure, Quadrant, RationalInput, mean, to_rational

__all__ = [
    "average_landscape",
    "compare_average_landscapes",
    "AverageComparison",
    "rank_k_transform",
]


def _require_diagrams(samples: Sequence[PersistenceMeasure]) -> None:
    if not samples:
        raise ValueError("need at least one diagram")
    for i, m in enumerate(samples):
        if not m.has_integer_weights():
            raise ValueError(f"sample {i} has non-integer weights")


def _mean_profile(profiles: Sequence[Profile]) -> Profile:
    """Exact pointwise mean of piecewise-linear profiles."""
    ts = sorted({t for profile in profiles for t, _ in profile.points})
    if not ts:
        return Profile()
    n = len(profiles)
    points = [
        (t, sum((profile.value(t) for profile in profiles), Fraction(0)) / n) for t in ts
    ]
    return Profile(points)


def average_landscape(samples: Sequence[PersistenceMeasure]) -> Landscape:
    """Pointwise mean of the sample landscapes on integer levels.

    Level k of the result is the mean of the samples' level-k profiles
    (zero where a sample's landscape has run out), on the band (k-1, k].
    """
    _require_diagrams(samples)
    landscapes = [compute_landscape(m) for m in samples]
    depth = max((int(ls.a_max) for ls in landscapes), default=0)
    bands = []
    for k in range(1, depth + 1):
        level_profiles = []
        for ls in landscapes:
            band = ls.band_at(k)
            level_profiles.append(band.profile if band else Profile())
        bands.append(Band(Fraction(k - 1), Fraction(k), _mean_profile(level_profiles)))
    return Landscape(bands)


@dataclass(frozen=True)
class AverageComparison:
    """Mean-measure landscape vs average landscape at one integer level.

    ``hypothesis_distinct`` holds when every sample has exactly ``level``
    distinct support points in the closed quadrant; ``hypothesis_mass`` is
    the alternative reading counting total weight.  Dominance of the average
    is only guaranteed under the hypothesis.
    """

    level: int
    t: Fraction
    h: Fraction
    hypothesis_distinct: bool
    hypothesis_mass: bool
    cpl_value: Fraction
    apl_value: Fraction

    @property
    def average_dominates(self) -> bool:
        return self.cpl_value <= self.apl_value


def compare_average_landscapes(
    samples: Sequence[PersistenceMeasure],
    level: int,
    t: RationalInput,
    h: RationalInput,
) -> AverageComparison:
    """Evaluate both aggregation routes at (level, t) and test the hypothesis
    on the closed quadrant with corner (t-h, t+h)."""
    _require_diagrams(samples)
    if level < 1:
        raise ValueError(f"level must be a positive integer, got {level}")
    t, h = to_rational(t), to_rational(h)
    closed = Quadrant(t, h, closed=True)
    distinct_ok = all(
        sum(1 for p in m.support if closed.contains(p)) == level for m in samples
    )
    mass_ok = all(m.quadrant_mass(closed) == level for m in samples)
    cpl = compute_landscape(mean(list(samples))).value(Fraction(level), t)
    apl = average_landscape(samples).value(Fraction(level), t)
    return AverageComparison(
        level=level,
        t=t,
        h=h,
        hypothesis_distinct=distinct_ok,
        hypothesis_mass=mass_ok,
        cpl_value=cpl,
        apl_value=apl,
    )


def rank_k_transform(m: PersistenceMeasure, k: int) -> PersistenceMeasure:
    """Diagram whose landscape is the level shift a -> a + (k-1) of m's.

    Drops the first k-1 unit levels of the landscape, shifts the remaining
    bands down, and reconstructs.  k = 1 is the identity; k beyond the top
    level yields the empty measure.
    """
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    if not m.has_integer_weights():
        raise ValueError("rank-k transform needs integer weights")
    if k == 1:
        return m
    shift = k - 1
    landscape = compute_landscape(m)
    bands = []
    for band in landscape.bands:
        if band.a_hi <= shift:
            continue
        bands.append(Band(max(band.a_lo - shift, Fraction(0)), band.a_hi - shift, band.profile))
    return reconstruct(Landscape(bands))
