"""Exact finitely supported persistence measures.

Atoms live in the open half-plane birth < death and carry positive rational
weights.  Coordinates and weights are `fractions.Fraction` end to end, so
every mass query, comparison and equality in this package is decidable
rather than approximate.  Floats are rejected at the boundary; the only
place decimals appear is the text I/O layer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence, Union

__all__ = [
    "Rational",
    "RationalInput",
    "to_rational",
    "Point",
    "Quadrant",
    "Rect",
    "PersistenceMeasure",
    "SignedMeasure",
    "mean",
]

Rational = Fraction
RationalInput = Union[Fraction, int, str]


def to_rational(value: RationalInput) -> Fraction:
    """Coerce ``value`` to an exact rational.

    Accepts Fraction, int, and strings such as ``"3"``, ``"-7/4"`` or
    ``"0.25"`` (decimal literals convert exactly).  Floats are rejected so
    that no binary rounding can sneak into the exact core.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(
        f"expected an exact rational (int, str or Fraction), got {type(value).__name__}"
    )


@dataclass(frozen=True, order=True)
class Point:
    """A diagram point (birth, death) with birth < death."""

    birth: Fraction
    death: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "birth", to_rational(self.birth))
        object.__setattr__(self, "death", to_rational(self.death))
        if self.birth >= self.death:
            raise ValueError(
                f"point must satisfy birth < death, got ({self.birth}, {self.death})"
            )

    @property
    def persistence(self) -> Fraction:
        return self.death - self.birth

    def __repr__(self) -> str:
        return f"Point({self.birth}, {self.death})"


def _as_point(value) -> Point:
    if isinstance(value, Point):
        return value
    if isinstance(value, Sequence) and len(value) == 2:
        return Point(value[0], value[1])
    raise TypeError(f"expected a Point or (birth, death) pair, got {value!r}")


@dataclass(frozen=True)
class Quadrant:
    """Upper-left quadrant with corner (t - h, t + h).

    Open flavour is the product (-inf, t-h) x (t+h, inf); the closed
    flavour includes the boundary rays.  Its mass counts the atoms whose
    bar contains [t-h, t+h].
    """

    t: Fraction
    h: Fraction
    closed: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "t", to_rational(self.t))
        object.__setattr__(self, "h", to_rational(self.h))
        if self.h < 0:
            raise ValueError(f"quadrant needs h >= 0, got {self.h}")

    @classmethod
    def from_corner(cls, u: RationalInput, v: RationalInput, closed: bool = False) -> "Quadrant":
        """Quadrant whose corner is (u, v) with u <= v."""
        u, v = to_rational(u), to_rational(v)
        if u > v:
            raise ValueError(f"corner must satisfy u <= v, got ({u}, {v})")
        return cls((u + v) / 2, (v - u) / 2, closed)

    @property
    def birth_bound(self) -> Fraction:
        return self.t - self.h

    @property
    def death_bound(self) -> Fraction:
        return self.t + self.h

    def contains(self, p: Point) -> bool:
        if self.closed:
            return p.birth <= self.birth_bound and p.death >= self.death_bound
        return p.birth < self.birth_bound and p.death > self.death_bound


@dataclass(frozen=True)
class Rect:
    """Half-open rectangle [x1, z1) x (z2, y2] with x1 <= z1 <= z2 <= y2.

    The ordering constraint keeps the rectangle inside the half-plane
    birth < death (it is empty when x1 == z1 or z2 == y2).
    """

    x1: Fraction
    z1: Fraction
    z2: Fraction
    y2: Fraction

    def __post_init__(self) -> None:
        for name in ("x1", "z1", "z2", "y2"):
            object.__setattr__(self, name, to_rational(getattr(self, name)))
        if not (self.x1 <= self.z1 <= self.z2 <= self.y2):
            raise ValueError(
                f"rectangle needs x1 <= z1 <= z2 <= y2, got "
                f"[{self.x1}, {self.z1}) x ({self.z2}, {self.y2}]"
            )

    @property
    def is_empty(self) -> bool:
        return self.x1 == self.z1 or self.z2 == self.y2

    def contains(self, p: Point) -> bool:
        return self.x1 <= p.birth < self.z1 and self.z2 < p.death <= self.y2


class PersistenceMeasure:
    """A finite weighted multiset of points, i.e. an atomic measure.

    Duplicate points merge by weight addition on construction; zero or
    negative weights are construction errors.  Instances are immutable and
    hashable, and equality is exact multiset equality.
    """

    __slots__ = ("_atoms", "_total")

    def __init__(self, atoms: Union[Mapping, Iterable] = ()) -> None:
        items = atoms.items() if isinstance(atoms, Mapping) else atoms
        merged: dict[Point, Fraction] = {}
        for point, weight in items:
            point = _as_point(point)
            w = to_rational(weight)
            if w <= 0:
                raise ValueError(f"atom weight must be positive, got {w} at {point}")
            merged[point] = merged.get(point, Fraction(0)) + w
        ordered = {p: merged[p] for p in sorted(merged)}
        object.__setattr__(self, "_atoms", ordered)
        object.__setattr__(self, "_total", sum(ordered.values(), Fraction(0)))

    def __setattr__(self, name, value):
        raise AttributeError("PersistenceMeasure is immutable")

    @classmethod
    def from_pairs(cls, triples: Iterable[Sequence]) -> "PersistenceMeasure":
        """Build from (birth, death, weight) triples; weight defaults to 1."""
        atoms = []
        for entry in triples:
            if len(entry) == 2:
                b, d = entry
                w: RationalInput = 1
            else:
                b, d, w = entry
            atoms.append((Point(b, d), w))
        return cls(atoms)

    @property
    def atoms(self) -> Mapping[Point, Fraction]:
        return MappingProxyType(self._atoms)

    @property
    def support(self) -> tuple[Point, ...]:
        return tuple(self._atoms)

    @property
    def total_mass(self) -> Fraction:
        return self._total

    @property
    def is_empty(self) -> bool:
        return not self._atoms

    def weight(self, point: Point) -> Fraction:
        return self._atoms.get(point, Fraction(0))

    def __len__(self) -> int:
        return len(self._atoms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PersistenceMeasure):
            return NotImplemented
        return self._atoms == other._atoms

    def __hash__(self) -> int:
        return hash(tuple(self._atoms.items()))

    def __repr__(self) -> str:
        inner = ", ".join(f"({p.birth},{p.death}): {w}" for p, w in self._atoms.items())
        return f"PersistenceMeasure({{{inner}}})"

    # -- mass queries ------------------------------------------------------

    def quadrant_mass(self, q: Quadrant) -> Fraction:
        """Total weight of atoms inside ``q`` (strict or closed per its flavour)."""
        return sum((w for p, w in self._atoms.items() if q.contains(p)), Fraction(0))

    def rect_mass(self, r: Rect) -> Fraction:
        """Total weight of atoms inside the half-open rectangle ``r``.

        In debug runs the direct sum is cross-checked against the
        four-quadrant inclusion-exclusion over the corner quadrants.
        """
        direct = sum((w for p, w in self._atoms.items() if r.contains(p)), Fraction(0))
        if __debug__:
            by_corners = (
                self.quadrant_mass(Quadrant.from_corner(r.z1, r.z2))
                - self.quadrant_mass(Quadrant.from_corner(r.x1, r.z2))
                - self.quadrant_mass(Quadrant.from_corner(r.z1, r.y2))
                + self.quadrant_mass(Quadrant.from_corner(r.x1, r.y2))
            )
            assert direct == by_corners, (direct, by_corners, r)
        return direct

    # -- linear structure --------------------------------------------------

    def scale(self, c: RationalInput) -> "PersistenceMeasure":
        """Multiply every weight by the positive rational ``c``."""
        c = to_rational(c)
        if c <= 0:
            raise ValueError(f"scale factor must be positive, got {c}")
        return PersistenceMeasure({p: w * c for p, w in self._atoms.items()})

    def __add__(self, other: "PersistenceMeasure") -> "PersistenceMeasure":
        if not isinstance(other, PersistenceMeasure):
            return NotImplemented
        merged = dict(self._atoms)
        for p, w in other._atoms.items():
            merged[p] = merged.get(p, Fraction(0)) + w
        return PersistenceMeasure(merged)

    def common_denominator(self) -> int:
        """Least positive integer c such that scale(c) has integer weights."""
        return lcm(1, *(w.denominator for w in self._atoms.values()))

    def has_integer_weights(self) -> bool:
        return all(w.denominator == 1 for w in self._atoms.values())

    # -- coordinate views (used by probes and sweeps) ------------------------

    @property
    def births(self) -> tuple[Fraction, ...]:
        return tuple(sorted({p.birth for p in self._atoms}))

    @property
    def deaths(self) -> tuple[Fraction, ...]:
        return tuple(sorted({p.death for p in self._atoms}))


def mean(measures: Sequence[PersistenceMeasure]) -> PersistenceMeasure:
    """Exact mean measure (1/N) * sum of the given measures."""
    if not measures:
        raise ValueError("mean of an empty list of measures")
    total = measures[0]
    for m in measures[1:]:
        total = total + m
    if total.is_empty:
        return total
    return total.scale(Fraction(1, len(measures)))


@dataclass(frozen=True)
class SignedMeasure:
    """Difference of two persistence measures in Jordan form.

    The pair is canonicalized on construction: weight shared by both sides
    on the same point cancels, so the stored supports are disjoint.
    """

    pos: PersistenceMeasure
    neg: PersistenceMeasure

    def __post_init__(self) -> None:
        shared = set(self.pos.atoms) & set(self.neg.atoms)
        if shared:
            pos_atoms = dict(self.pos.atoms)
            neg_atoms = dict(self.neg.atoms)
            for p in shared:
                cancel = min(pos_atoms[p], neg_atoms[p])
                for side in (pos_atoms, neg_atoms):
                    side[p] -= cancel
                    if side[p] == 0:
                        del side[p]
            object.__setattr__(self, "pos", PersistenceMeasure(pos_atoms))
            object.__setattr__(self, "neg", PersistenceMeasure(neg_atoms))

    @property
    def is_zero(self) -> bool:
        return self.pos.is_empty and self.neg.is_empty

    def quadrant_mass(self, q: Quadrant) -> Fraction:
        """Signed mass pos(q) - neg(q); may be negative."""
        return self.pos.quadrant_mass(q) - self.neg.quadrant_mass(q)
