"""Text formats: diagram files, landscape files, plot tables.

All on-disk numbers are exact: tokens are either rational literals ``p/q``
or decimal literals (converted exactly, ``0.25`` -> 1/4).  Writers emit
canonical rationals, never floats, so parse(write(x)) == x always.  Decimal
output appears only in plot tables, with an explicit digit count.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .landscape import Band, Landscape, Profile
from .measures import PersistenceMeasure, Point, RationalInput, to_rational

__all__ = [
    "FormatError",
    "parse_rational",
    "format_rational",
    "decimal_string",
    "parse_diagram",
    "write_diagram",
    "parse_landscape",
    "write_landscape",
    "landscape_table",
    "quadrant_mass_table",
]


class FormatError(ValueError):
    """Malformed input text; carries a 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def parse_rational(token: str, line: int | None = None) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"not a rational or decimal literal: {token!r}", line) from None


def format_rational(value: Fraction) -> str:
    return str(value)


def decimal_string(value: Fraction, digits: int = 6) -> str:
    """Round-half-even decimal rendering with exactly ``digits`` fractional digits."""
    if digits < 0:
        raise ValueError("digits must be >= 0")
    scaled = round(value * 10**digits)
    sign = "-" if scaled < 0 else ""
    scaled = abs(scaled)
    whole, frac = divmod(scaled, 10**digits)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"


def _content_lines(text: str) -> Iterable[tuple[int, str]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield number, stripped


def parse_diagram(text: str) -> PersistenceMeasure:
    """Parse one atom per line: ``birth death [weight]``, weight default 1."""
    atoms = []
    for line, content in _content_lines(text):
        tokens = content.split()
        if len(tokens) not in (2, 3):
            raise FormatError(
                f"expected 'birth death [weight]', got {len(tokens)} tokens", line
            )
        birth = parse_rational(tokens[0], line)
        death = parse_rational(tokens[1], line)
        weight = parse_rational(tokens[2], line) if len(tokens) == 3 else Fraction(1)
        if birth >= death:
            raise FormatError(f"birth {birth} must be < death {death}", line)
        if weight <= 0:
            raise FormatError(f"weight must be positive, got {weight}", line)
        atoms.append((Point(birth, death), weight))
    return PersistenceMeasure(atoms)


def write_diagram(m: PersistenceMeasure) -> str:
    lines = ["# birth death weight"]
    for p, w in m.atoms.items():
        lines.append(
            f"{format_rational(p.birth)} {format_rational(p.death)} {format_rational(w)}"
        )
    return "\n".join(lines) + "\n"


def parse_landscape(text: str) -> Landscape:
    """Parse the band format; canonicalizes and checks structure.

    Rejects non-contiguous bands, unsorted or negative breakpoints, nonzero
    endpoint heights, and any segment steeper than slope 1 in absolute value
    (such a function is not 1-Lipschitz, hence not a landscape).  Gentler
    slopes are allowed so averaged landscapes survive a round trip.
    """
    lines = list(_content_lines(text))
    if not lines:
        raise FormatError("empty landscape file")
    cursor = 0

    def next_line() -> tuple[int, str]:
        nonlocal cursor
        if cursor >= len(lines):
            raise FormatError("unexpected end of landscape file", lines[-1][0])
        entry = lines[cursor]
        cursor += 1
        return entry

    line, header = next_line()
    parts = header.split()
    if len(parts) != 2 or parts[0] != "bands":
        raise FormatError(f"expected 'bands N' header, got {header!r}", line)
    try:
        count = int(parts[1])
    except ValueError:
        raise FormatError(f"bad band count {parts[1]!r}", line) from None
    if count < 0:
        raise FormatError(f"band count must be >= 0, got {count}", line)

    bands = []
    for _ in range(count):
        line, band_header = next_line()
        parts = band_header.split()
        if len(parts) != 4 or parts[0] != "band":
            raise FormatError(f"expected 'band a_lo a_hi M', got {band_header!r}", line)
        a_lo = parse_rational(parts[1], line)
        a_hi = parse_rational(parts[2], line)
        try:
            n_points = int(parts[3])
        except ValueError:
            raise FormatError(f"bad breakpoint count {parts[3]!r}", line) from None
        points = []
        for _ in range(n_points):
            line, point_line = next_line()
            tokens = point_line.split()
            if len(tokens) != 2:
                raise FormatError(f"expected 't h' breakpoint, got {point_line!r}", line)
            points.append((parse_rational(tokens[0], line), parse_rational(tokens[1], line)))
        try:
            profile = Profile(points)
            band = Band(a_lo, a_hi, profile)
        except ValueError as exc:
            raise FormatError(str(exc), line) from None
        for slope in profile.slopes():
            if abs(slope) > 1:
                raise FormatError(f"segment slope {slope} is not 1-Lipschitz", line)
        bands.append(band)
    if cursor != len(lines):
        raise FormatError("trailing content after last band", lines[cursor][0])
    try:
        return Landscape(bands)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def write_landscape(landscape: Landscape) -> str:
    lines = [f"bands {len(landscape.bands)}"]
    for band in landscape.bands:
        lines.append(
            f"band {format_rational(band.a_lo)} {format_rational(band.a_hi)} "
            f"{len(band.profile.points)}"
        )
        for t, h in band.profile.points:
            lines.append(f"{format_rational(t)} {format_rational(h)}")
    return "\n".join(lines) + "\n"


def _grid(lo: Fraction, hi: Fraction, count: int) -> list[Fraction]:
    if count < 1:
        raise ValueError(f"grid needs at least one point, got {count}")
    if count == 1:
        return [lo]
    step = (hi - lo) / (count - 1)
    return [lo + i * step for i in range(count)]


def landscape_table(
    landscape: Landscape,
    a_lo: RationalInput,
    a_hi: RationalInput,
    a_count: int,
    t_lo: RationalInput,
    t_hi: RationalInput,
    t_count: int,
    digits: int = 6,
) -> str:
    """Tab-separated ``a t value`` rows over the grid, decimals with ``digits``."""
    a_lo, a_hi = to_rational(a_lo), to_rational(a_hi)
    t_lo, t_hi = to_rational(t_lo), to_rational(t_hi)
    if a_lo <= 0:
        raise ValueError(f"mass levels must be positive, got a_lo={a_lo}")
    rows = []
    for a in _grid(a_lo, a_hi, a_count):
        for t in _grid(t_lo, t_hi, t_count):
            value = landscape.value(a, t)
            rows.append(
                f"{decimal_string(a, digits)}\t{decimal_string(t, digits)}\t"
                f"{decimal_string(value, digits)}"
            )
    return "\n".join(rows) + "\n"


def quadrant_mass_table(
    landscape: Landscape,
    t: RationalInput,
    h_lo: RationalInput,
    h_hi: RationalInput,
    h_count: int,
    digits: int = 6,
) -> str:
    """Tab-separated ``h mass`` rows of the induced open-quadrant mass at fixed t."""
    from .inversion import landscape_quadrant_mass

    t = to_rational(t)
    h_lo, h_hi = to_rational(h_lo), to_rational(h_hi)
    if h_lo < 0:
        raise ValueError(f"h must be >= 0, got {h_lo}")
    rows = []
    for h in _grid(h_lo, h_hi, h_count):
        mass = landscape_quadrant_mass(landscape, t, h)
        rows.append(f"{decimal_string(h, digits)}\t{decimal_string(mass, digits)}")
    return "\n".join(rows) + "\n"
