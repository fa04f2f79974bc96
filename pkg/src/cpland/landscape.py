"""Continuous persistence landscapes over exact rationals.

The landscape of a measure m is the function

    lambda(a, t) = sup{ h > 0 : m(open quadrant with corner (t-h, t+h)) >= a }

for a > 0, with sup of the empty set taken as 0.  For finitely supported m
it is a step function in the mass level a, so we store it as a sorted list
of level bands (a_lo, a_hi] each carrying one piecewise-linear profile in t.
The half-open-left bands make left-continuity in a a property of the data
structure, and canonicalization (minimal breakpoints, merged equal bands,
no trailing zero band) makes equality of landscapes a syntactic check.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Iterable, Optional, Sequence

from . import _sweep
from .measures import PersistenceMeasure, RationalInput, to_rational

__all__ = [
    "Profile",
    "Band",
    "Landscape",
    "compute_landscape",
    "landscape_value",
    "l1_norm",
    "l1_distance",
    "validate_landscape",
    "PropertyCheck",
    "LandscapeValidation",
]


class Profile:
    """A compactly supported piecewise-linear function of t.

    Breakpoints are (t, h) pairs with strictly increasing t and h >= 0; the
    function is 0 outside [first t, last t], which forces the first and last
    breakpoint to have h = 0.  Construction canonicalizes: collinear interior
    breakpoints are dropped and an all-zero profile becomes the empty one.
    """

    __slots__ = ("points",)

    def __init__(self, points: Iterable[Sequence[RationalInput]] = ()) -> None:
        raw = [(to_rational(t), to_rational(h)) for t, h in points]
        for (t0, _), (t1, _) in zip(raw, raw[1:]):
            if t0 >= t1:
                raise ValueError(f"breakpoints must have strictly increasing t near t={t1}")
        for t, h in raw:
            if h < 0:
                raise ValueError(f"profile height must be >= 0, got {h} at t={t}")
        if raw and (raw[0][1] != 0 or raw[-1][1] != 0):
            raise ValueError("profile must start and end at height 0")
        object.__setattr__(self, "points", tuple(_canonical(raw)))

    def __setattr__(self, name, value):
        raise AttributeError("Profile is immutable")

    @property
    def is_zero(self) -> bool:
        return not self.points

    def value(self, t: RationalInput) -> Fraction:
        t = to_rational(t)
        pts = self.points
        if not pts or t < pts[0][0] or t > pts[-1][0]:
            return Fraction(0)
        ts = [p[0] for p in pts]
        j = bisect.bisect_right(ts, t) - 1
        t0, h0 = pts[j]
        if t == t0:
            return h0
        t1, h1 = pts[j + 1]
        return h0 + (h1 - h0) * (t - t0) / (t1 - t0)

    def integral(self) -> Fraction:
        """Exact integral over t (trapezoid rule on breakpoints)."""
        total = Fraction(0)
        for (t0, h0), (t1, h1) in zip(self.points, self.points[1:]):
            total += (t1 - t0) * (h0 + h1) / 2
        return total

    def slopes(self) -> list[Fraction]:
        return [
            (h1 - h0) / (t1 - t0)
            for (t0, h0), (t1, h1) in zip(self.points, self.points[1:])
        ]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Profile):
            return NotImplemented
        return self.points == other.points

    def __hash__(self) -> int:
        return hash(self.points)

    def __repr__(self) -> str:
        return f"Profile({list(self.points)!r})"


def _canonical(points: list[tuple[Fraction, Fraction]]) -> list[tuple[Fraction, Fraction]]:
    if not points:
        return []
    kept = [points[0]]
    for j in range(1, len(points) - 1):
        t0, h0 = kept[-1]
        t1, h1 = points[j]
        t2, h2 = points[j + 1]
        if (t1 - t0) * (h2 - h1) != (t2 - t1) * (h1 - h0):
            kept.append(points[j])
    if len(points) > 1:
        kept.append(points[-1])
    while len(kept) >= 2 and kept[0][1] == 0 and kept[1][1] == 0:
        kept.pop(0)
    while len(kept) >= 2 and kept[-1][1] == 0 and kept[-2][1] == 0:
        kept.pop()
    if len(kept) == 1 or all(h == 0 for _, h in kept):
        return []
    return kept


@dataclass(frozen=True)
class Band:
    """One level band: the profile gives lambda(a, .) for a in (a_lo, a_hi]."""

    a_lo: Fraction
    a_hi: Fraction
    profile: Profile

    def __post_init__(self) -> None:
        object.__setattr__(self, "a_lo", to_rational(self.a_lo))
        object.__setattr__(self, "a_hi", to_rational(self.a_hi))
        if self.a_lo < 0 or self.a_hi <= self.a_lo:
            raise ValueError(f"band needs 0 <= a_lo < a_hi, got ({self.a_lo}, {self.a_hi}]")
        if not isinstance(self.profile, Profile):
            raise TypeError("band profile must be a Profile")


class Landscape:
    """Bands partition (0, a_max]; the function is 0 above a_max.

    Construction requires contiguous bands starting at 0 and canonicalizes
    by merging adjacent bands with equal profiles and dropping a trailing
    zero-profile band (it encodes the same function as the implicit zero
    region above a_max).
    """

    __slots__ = ("bands", "__dict__")

    def __init__(self, bands: Iterable[Band] = ()) -> None:
        bands = tuple(bands)
        expected_lo = Fraction(0)
        for band in bands:
            if not isinstance(band, Band):
                raise TypeError("landscape bands must be Band instances")
            if band.a_lo != expected_lo:
                raise ValueError(
                    f"bands must be contiguous from 0: expected a_lo={expected_lo}, "
                    f"got {band.a_lo}"
                )
            expected_lo = band.a_hi
        merged: list[Band] = []
        for band in bands:
            if merged and merged[-1].profile == band.profile:
                merged[-1] = Band(merged[-1].a_lo, band.a_hi, band.profile)
            else:
                merged.append(band)
        while merged and merged[-1].profile.is_zero:
            merged.pop()
        object.__setattr__(self, "bands", tuple(merged))

    def __setattr__(self, name, value):
        if name == "__dict__" or name.startswith("_"):
            object.__setattr__(self, name, value)
            return
        raise AttributeError("Landscape is immutable")

    @property
    def is_zero(self) -> bool:
        return not self.bands

    @property
    def a_max(self) -> Fraction:
        return self.bands[-1].a_hi if self.bands else Fraction(0)

    def band_at(self, a: RationalInput) -> Optional[Band]:
        """The band whose half-open level interval contains a, if any."""
        a = to_rational(a)
        if a <= 0:
            raise ValueError(f"mass level must be positive, got {a}")
        if not self.bands or a > self.a_max:
            return None
        uppers = [band.a_hi for band in self.bands]
        return self.bands[bisect.bisect_left(uppers, a)]

    def value(self, a: RationalInput, t: RationalInput) -> Fraction:
        """Evaluate lambda(a, t); requires a > 0."""
        band = self.band_at(a)
        return band.profile.value(t) if band else Fraction(0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Landscape):
            return NotImplemented
        return self.bands == other.bands

    def __hash__(self) -> int:
        return hash(self.bands)

    def __repr__(self) -> str:
        return f"Landscape({len(self.bands)} bands, a_max={self.a_max})"

    @cached_property
    def _monotone_witness(self) -> Optional[str]:
        return _first_monotonicity_violation(self)

    @cached_property
    def levels_monotone(self) -> bool:
        """True when band profiles are pointwise non-increasing with level."""
        return self._monotone_witness is None


def compute_landscape(m: PersistenceMeasure) -> Landscape:
    """Exact landscape of a finitely supported measure.

    Levels come from the weighted tent sweep: the level boundaries are the
    cumulative tent weights observed anywhere, and each band profile is the
    corresponding generalized k-th largest envelope.  The result satisfies
    value(a, t) == landscape_value(m, a, t) for every a > 0, t.
    """
    births, deaths, weights = [], [], []
    for p, w in m.atoms.items():
        births.append(p.birth)
        deaths.append(p.death)
        weights.append(w)
    boundaries, profiles = _sweep.level_bands(births, deaths, weights)
    bands = []
    lo = Fraction(0)
    for hi, pts in zip(boundaries, profiles):
        bands.append(Band(lo, hi, Profile(pts)))
        lo = hi
    return Landscape(bands)


def landscape_value(m: PersistenceMeasure, a: RationalInput, t: RationalInput) -> Fraction:
    """Direct evaluation of the landscape from the atoms.

    Sorts the weighted tent values at t in decreasing order and returns the
    value at which the cumulative weight first reaches a (0 if it never
    does).  Independent of compute_landscape; serves as its oracle.
    """
    a, t = to_rational(a), to_rational(t)
    if a <= 0:
        raise ValueError(f"mass level must be positive, got {a}")
    entries = []
    for p, w in m.atoms.items():
        v = min(t - p.birth, p.death - t)
        if v > 0:
            entries.append((v, w))
    entries.sort(key=lambda e: e[0], reverse=True)
    cumulative = Fraction(0)
    for v, w in entries:
        cumulative += w
        if cumulative >= a:
            return v
    return Fraction(0)


# -- L1 geometry -------------------------------------------------------------


def l1_norm(landscape: Landscape) -> Fraction:
    """Exact integral of the landscape over (0, inf) x R."""
    return sum(
        ((band.a_hi - band.a_lo) * band.profile.integral() for band in landscape.bands),
        Fraction(0),
    )


def l1_distance(first: Landscape, second: Landscape) -> Fraction:
    """Exact L1 distance between two landscapes.

    Refines both level partitions to a common one, then integrates the
    absolute profile difference per refined band, splitting segments at
    sign crossings (which have rational coordinates).
    """
    cuts = sorted({band.a_hi for band in first.bands} | {band.a_hi for band in second.bands})
    total = Fraction(0)
    lo = Fraction(0)
    for hi in cuts:
        p = first.band_at(hi)
        q = second.band_at(hi)
        p_profile = p.profile if p else Profile()
        q_profile = q.profile if q else Profile()
        total += (hi - lo) * _abs_difference_integral(p_profile, q_profile)
        lo = hi
    return total


def _abs_difference_integral(p: Profile, q: Profile) -> Fraction:
    if p == q:
        return Fraction(0)
    ts = sorted({t for t, _ in p.points} | {t for t, _ in q.points})
    total = Fraction(0)
    for t0, t1 in zip(ts, ts[1:]):
        y0 = p.value(t0) - q.value(t0)
        y1 = p.value(t1) - q.value(t1)
        if y0 * y1 >= 0:
            total += (abs(y0) + abs(y1)) * (t1 - t0) / 2
        else:
            cross = t0 + y0 * (t1 - t0) / (y0 - y1)
            total += abs(y0) * (cross - t0) / 2 + abs(y1) * (t1 - cross) / 2
    return total


# -- the four characterizing properties ---------------------------------------


@dataclass(frozen=True)
class PropertyCheck:
    passed: bool
    witness: str = ""


@dataclass(frozen=True)
class LandscapeValidation:
    """Per-property report; membership in the landscape image needs all four."""

    level_monotone: PropertyCheck
    unit_slopes: PropertyCheck
    left_continuous: PropertyCheck
    rect_nonnegative: PropertyCheck

    @property
    def ok(self) -> bool:
        return (
            self.level_monotone.passed
            and self.unit_slopes.passed
            and self.left_continuous.passed
            and self.rect_nonnegative.passed
        )

    def failures(self) -> list[str]:
        out = []
        for name in ("level_monotone", "unit_slopes", "left_continuous", "rect_nonnegative"):
            check: PropertyCheck = getattr(self, name)
            if not check.passed:
                out.append(f"{name}: {check.witness}")
        return out


def _first_monotonicity_violation(landscape: Landscape) -> Optional[str]:
    for upper, lower in zip(landscape.bands, landscape.bands[1:]):
        ts = sorted(
            {t for t, _ in upper.profile.points} | {t for t, _ in lower.profile.points}
        )
        for t in ts:
            hi, lo = upper.profile.value(t), lower.profile.value(t)
            if lo > hi:
                return (
                    f"band ({lower.a_lo}, {lower.a_hi}] exceeds band "
                    f"({upper.a_lo}, {upper.a_hi}] at t={t}: {lo} > {hi}"
                )
    return None


def _slope_violation(landscape: Landscape) -> Optional[str]:
    allowed = (Fraction(-1), Fraction(0), Fraction(1))
    for band in landscape.bands:
        for slope in band.profile.slopes():
            if slope not in allowed:
                return f"band ({band.a_lo}, {band.a_hi}] has segment slope {slope}"
    return None


def _rect_violation(landscape: Landscape) -> Optional[str]:
    """Check nonnegativity of the induced rectangle masses on the corner grid.

    The quadrant masses induced by a piecewise-linear landscape are constant
    between consecutive grid lines through the breakpoint corners mapped to
    (t-h, t+h) coordinates, and any admissible rectangle with grid-aligned
    corners telescopes into single-cell rectangles.  Checking every valid
    grid cell is therefore a finite sufficient test.
    """
    from .inversion import _ScaledLandscape  # local import to avoid a cycle

    if landscape.is_zero:
        return None
    scaled = _ScaledLandscape(landscape)
    births, deaths = set(), set()
    for band in landscape.bands:
        for t, h in band.profile.points:
            births.add(t - h)
            deaths.add(t + h)
    u_grid = sorted(births)
    u_grid.append(u_grid[-1] + 1)
    v_grid = sorted(deaths)
    v_grid.insert(0, v_grid[0] - 1)

    mass_cache: dict[tuple[Fraction, Fraction], Fraction] = {}

    def corner_mass(u: Fraction, v: Fraction) -> Fraction:
        key = (u, v)
        if key not in mass_cache:
            mass_cache[key] = scaled.quadrant_mass((u + v) / 2, (v - u) / 2)
        return mass_cache[key]

    for u0, u1 in zip(u_grid, u_grid[1:]):
        for v0, v1 in zip(v_grid, v_grid[1:]):
            if u1 > v0:
                continue
            cell = (
                corner_mass(u1, v0)
                - corner_mass(u0, v0)
                - corner_mass(u1, v1)
                + corner_mass(u0, v1)
            )
            if cell < 0:
                return f"rectangle [{u0}, {u1}) x ({v0}, {v1}] has mass {cell}"
    return None


def validate_landscape(landscape: Landscape) -> LandscapeValidation:
    """Check the four properties characterizing landscapes of measures.

    (1) profiles non-increasing with level (and 0 above a_max, which the
    finite band list gives structurally); (2) all segment slopes in
    {-1, 0, +1}; (3) left-continuity in the level, which the half-open
    band representation guarantees for any constructible instance; (4)
    nonnegativity of the induced rectangle masses on the corner grid.
    """
    monotone = landscape._monotone_witness
    slope = _slope_violation(landscape)
    rect = _rect_violation(landscape)
    return LandscapeValidation(
        level_monotone=PropertyCheck(monotone is None, monotone or ""),
        unit_slopes=PropertyCheck(slope is None, slope or ""),
        left_continuous=PropertyCheck(True, ""),
        rect_nonnegative=PropertyCheck(rect is None, rect or ""),
    )
