"""Immersed multicurves in the marked strip, in normal form.

Pegs sit at every integer height on the vertical line x = 0.  The only
components this package ever produces are a horizontal line slightly above
peg 0 and figure-eight curves enclosing a run of consecutive pegs, so they are
stored combinatorially; planar geometry is synthesized only by the renderer.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .split import BoxDecomposition

LINE_OFFSET = Fraction(1, 4)


@dataclass(frozen=True)
class Line:
    height_offset: Fraction = LINE_OFFSET

    def __post_init__(self):
        object.__setattr__(self, "height_offset", Fraction(self.height_offset))
        if self.height_offset.denominator == 1:
            raise ValueError("a line may not pass through a peg")


@dataclass(frozen=True, order=True)
class TallEight:
    """Figure-eight whose right lobe encloses pegs anchor, ..., anchor + span - 1."""

    anchor: int
    span: int = 1

    def __post_init__(self):
        if self.span < 1:
            raise ValueError(f"span must be positive, got {self.span}")

    @property
    def pegs(self) -> range:
        return range(self.anchor, self.anchor + self.span)


@dataclass(frozen=True)
class RawPolyline:
    """Closed polyline for drawing only; invariant extraction refuses it."""

    points: tuple[tuple[Fraction, Fraction], ...]


CurveComponent = Union[Line, TallEight, RawPolyline]


class NotNormalForm(ValueError):
    pass


@dataclass(frozen=True)
class MultiCurve:
    components: tuple[CurveComponent, ...] = ()

    @property
    def lines(self) -> list[Line]:
        return [c for c in self.components if isinstance(c, Line)]

    @property
    def eights(self) -> list[TallEight]:
        return [c for c in self.components if isinstance(c, TallEight)]

    def canonical(self) -> MultiCurve:
        lines = sorted(self.lines, key=lambda l: l.height_offset)
        return MultiCurve(tuple(lines) + tuple(sorted(self.eights)))

    def __eq__(self, other):
        if not isinstance(other, MultiCurve):
            return NotImplemented
        return Counter(self.components) == Counter(other.components)

    def __hash__(self):
        return hash(frozenset(Counter(self.components).items()))


def _require_normal(m: MultiCurve) -> None:
    raw = [c for c in m.components if isinstance(c, RawPolyline)]
    if raw:
        raise NotNormalForm("raw polylines carry no invariant data")


def curve_from_complex(d: BoxDecomposition) -> MultiCurve:
    """One line for the free generator plus one unit figure-eight per box."""
    if not isinstance(d, BoxDecomposition) or d.free_generator is None:
        raise NotNormalForm("expected a free generator plus unit boxes")
    comps: list[CurveComponent] = [Line()]
    comps.extend(TallEight(bx.center_alexander, 1) for bx in d.boxes)
    return MultiCurve(tuple(comps))


def peg_line_intersections(m: MultiCurve) -> int:
    """Intersections with the peg line: 1 per line, 4 per figure-eight."""
    _require_normal(m)
    return len(m.lines) + 4 * len(m.eights)


def right_excursion_depths(m: MultiCurve) -> list[int]:
    """Pegs enclosed by each right-hand excursion, one per figure-eight (sorted, descending)."""
    _require_normal(m)
    return sorted((e.span for e in m.eights), reverse=True)


def max_depth(m: MultiCurve) -> int:
    return max(right_excursion_depths(m), default=0)


# --- planar geometry for drawing ---------------------------------------------

EIGHT_CLEARANCE = Fraction(1, 4)
LEFT_LOBE = Fraction(1, 2)


def eight_outline(e: TallEight) -> RawPolyline:
    """Control points of a figure-eight, traversed once and closed.

    The strands cross at (1/4, middle of the pegs); the left lobe is 1/2 wide and
    wraps the pegs, the right lobe reaches ``span`` units to the right of the
    crossing, which is the excursion whose depth the invariant reads off.
    """
    top = Fraction(e.anchor + e.span - 1) + EIGHT_CLEARANCE
    bot = Fraction(e.anchor) - EIGHT_CLEARANCE
    mid = (top + bot) / 2
    cx = LEFT_LOBE / 2
    left = cx - LEFT_LOBE
    right = cx + e.span
    pts = (
        (cx, mid),
        (Fraction(0), top),
        (left, mid),
        (Fraction(0), bot),
        (cx, mid),
        ((cx + right) / 2, top),
        (right, mid),
        ((cx + right) / 2, bot),
    )
    return RawPolyline(pts)


def right_lobe(e: TallEight) -> RawPolyline:
    """The open arc of the right lobe, from the crossing back to the crossing."""
    pts = eight_outline(e).points
    return RawPolyline(pts[4:] + pts[:1])


def line_outline(line: Line, x_min: Fraction, x_max: Fraction) -> RawPolyline:
    return RawPolyline(((Fraction(x_min), line.height_offset), (Fraction(x_max), line.height_offset)))
