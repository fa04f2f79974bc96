"""Inverting the landscape transform.

A landscape L assigns to each open quadrant with corner (u, v) the mass

    inf{ a >= 0 : L(a, (u+v)/2) <= (v-u)/2 },

the left-continuous step function in a being inverted back into a mass.
For the landscape of a measure this recovers the measure's open-quadrant
masses exactly, rectangle masses follow by inclusion-exclusion, and atoms
can be read off the profile corners.  Reconstruction finishes with a full
verification (recompute the landscape of the result and compare), so a
landscape outside the image of finitely supported measures fails loudly.
"""

from __future__ import annotations

import bisect
from fractions import Fraction
from math import lcm
from typing import Optional

from .landscape import Landscape, compute_landscape, validate_landscape
from .measures import (
    PersistenceMeasure,
    Point,
    Rect,
    RationalInput,
    SignedMeasure,
    to_rational,
)

__all__ = [
    "landscape_quadrant_mass",
    "landscape_rect_mass",
    "reconstruct",
    "reconstruct_signed",
    "ReconstructionError",
]


class ReconstructionError(ValueError):
    """The landscape is not the landscape of a finitely supported measure."""


def landscape_quadrant_mass(
    landscape: Landscape, t: RationalInput, h: RationalInput
) -> Fraction:
    """Mass the landscape induces on the open quadrant with corner (t-h, t+h).

    Since the level function a -> L(a, t) is a left-continuous step function
    taking the band profile values, the infimum is attained at a band
    boundary (or is 0, or a_max when no band value drops to h).
    """
    t, h = to_rational(t), to_rational(h)
    if h < 0:
        raise ValueError(f"quadrant needs h >= 0, got {h}")
    bands = landscape.bands
    if not bands:
        return Fraction(0)
    if landscape.levels_monotone:
        # First band (in level order) whose profile value at t is <= h.
        lo, hi = 0, len(bands)
        while lo < hi:
            mid = (lo + hi) // 2
            if bands[mid].profile.value(t) <= h:
                hi = mid
            else:
                lo = mid + 1
        return bands[lo].a_lo if lo < len(bands) else landscape.a_max
    for band in bands:
        if band.profile.value(t) <= h:
            return band.a_lo
    return landscape.a_max


def landscape_rect_mass(landscape: Landscape, rect: Rect) -> Fraction:
    """Mass of a half-open rectangle via four-corner inclusion-exclusion.

    Nonnegative whenever the landscape satisfies the four characterizing
    properties; a negative value is valid output for other inputs and is
    exactly what validate_landscape's rectangle check detects.
    """

    def corner(u: Fraction, v: Fraction) -> Fraction:
        return landscape_quadrant_mass(landscape, (u + v) / 2, (v - u) / 2)

    return (
        corner(rect.z1, rect.z2)
        - corner(rect.x1, rect.z2)
        - corner(rect.z1, rect.y2)
        + corner(rect.x1, rect.y2)
    )


class _ScaledLandscape:
    """Integer-grid view of a landscape for bulk mass queries.

    All breakpoint coordinates multiplied by the scale are even integers and
    the scale carries an extra factor 4, so quadrant corners taken from
    breakpoints, candidate atom coordinates, and midpoints of their gaps all
    land on the integer grid.  Profile values between breakpoints are kept
    as exact integer pairs (numerator, denominator); no Fraction
    normalization happens in the inner loops.
    """

    __slots__ = ("scale", "ts", "hs", "lowers", "a_max", "monotone")

    def __init__(self, landscape: Landscape) -> None:
        denominators = [1]
        for band in landscape.bands:
            for t, h in band.profile.points:
                denominators.append(t.denominator)
                denominators.append(h.denominator)
        self.scale = 4 * lcm(*denominators)
        self.ts = []
        self.hs = []
        self.lowers = []
        for band in landscape.bands:
            self.ts.append([int(t * self.scale) for t, _ in band.profile.points])
            self.hs.append([int(h * self.scale) for _, h in band.profile.points])
            self.lowers.append(band.a_lo)
        self.a_max = landscape.a_max
        self.monotone = landscape.levels_monotone

    def _value(self, k: int, t: int) -> tuple[int, int]:
        """Profile value of band k at scaled abscissa t as (num, den), den > 0."""
        ts, hs = self.ts[k], self.hs[k]
        if not ts or t < ts[0] or t > ts[-1]:
            return 0, 1
        j = bisect.bisect_right(ts, t) - 1
        if ts[j] == t:
            return hs[j], 1
        dt = ts[j + 1] - ts[j]
        return hs[j] * dt + (hs[j + 1] - hs[j]) * (t - ts[j]), dt

    def quadrant_mass(self, t: RationalInput, h: RationalInput) -> Fraction:
        t, h = to_rational(t), to_rational(h)
        ts = t * self.scale
        hs = h * self.scale
        if ts.denominator != 1 or hs.denominator != 1:
            raise ValueError(f"probe ({t}, {h}) is off the landscape grid")
        t_int, h_int = int(ts), int(hs)

        def below(k: int) -> bool:
            num, den = self._value(k, t_int)
            return num <= h_int * den

        n = len(self.ts)
        if n == 0:
            return Fraction(0)
        if self.monotone:
            lo, hi = 0, n
            while lo < hi:
                mid = (lo + hi) // 2
                if below(mid):
                    hi = mid
                else:
                    lo = mid + 1
            return self.lowers[lo] if lo < n else self.a_max
        for k in range(n):
            if below(k):
                return self.lowers[k]
        return self.a_max

    def rect_mass(self, x1: Fraction, z1: Fraction, z2: Fraction, y2: Fraction) -> Fraction:
        def corner(u: Fraction, v: Fraction) -> Fraction:
            return self.quadrant_mass((u + v) / 2, (v - u) / 2)

        return corner(z1, z2) - corner(x1, z2) - corner(z1, y2) + corner(x1, y2)


def _gap_bounds(values: list[Fraction], index: int) -> tuple[Fraction, Fraction]:
    """Midpoints separating values[index] from its sorted neighbours."""
    v = values[index]
    lower = (values[index - 1] + v) / 2 if index > 0 else v - 1
    upper = (v + values[index + 1]) / 2 if index + 1 < len(values) else v + 1
    return lower, upper


def reconstruct(landscape: Landscape) -> PersistenceMeasure:
    """Recover the unique finitely supported measure with this landscape.

    Candidate atoms are (t-h, t+h) over all profile corners with h > 0;
    every true atom shows up as a concave corner in some band, and spurious
    candidates (crossing corners) receive weight 0.  Each weight is the
    induced mass of a separating rectangle chosen from midpoints of the
    candidate coordinate gaps, so it isolates exactly one candidate.  The
    result is verified by recomputing its landscape; any mismatch raises.
    """
    report = validate_landscape(landscape)
    if not report.ok:
        raise ReconstructionError(
            "landscape fails the characterizing properties: " + "; ".join(report.failures())
        )
    if landscape.is_zero:
        return PersistenceMeasure()

    candidates: set[tuple[Fraction, Fraction]] = set()
    for band in landscape.bands:
        for t, h in band.profile.points:
            if h > 0:
                candidates.add((t - h, t + h))
    births = sorted({b for b, _ in candidates})
    deaths = sorted({d for _, d in candidates})
    birth_index = {b: i for i, b in enumerate(births)}
    death_index = {d: i for i, d in enumerate(deaths)}

    scaled = _ScaledLandscape(landscape)
    atoms: dict[Point, Fraction] = {}
    for b, d in sorted(candidates):
        x1, next_b = _gap_bounds(births, birth_index[b])
        prev_d, _ = _gap_bounds(deaths, death_index[d])
        mid = (b + d) / 2
        z1 = min(next_b, mid)
        z2 = max(prev_d, mid)
        w = scaled.rect_mass(x1, z1, z2, d)
        if w < 0:
            raise ReconstructionError(
                f"negative weight {w} for candidate atom ({b}, {d})"
            )
        if w > 0:
            atoms[Point(b, d)] = w

    measure = PersistenceMeasure(atoms)
    if compute_landscape(measure) != landscape:
        raise ReconstructionError(
            "landscape is not the landscape of any finitely supported measure"
        )
    return measure


def reconstruct_signed(positive: Landscape, negative: Landscape) -> SignedMeasure:
    """Reconstruct a Jordan pair componentwise.

    Shared support cancels in the SignedMeasure constructor, restoring
    disjointness when the two landscapes come from overlapping measures.
    """
    return SignedMeasure(reconstruct(positive), reconstruct(negative))
