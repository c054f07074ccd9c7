"""(p, q)-cabling of normal-form multicurves and the resulting torsion bound.

The transform draws p copies of the curve scaled vertically by p, each shifted
q units below the previous one, then slides the pegs back onto one vertical
line.  Closed components never need the loose-end cleanup step, so on a
figure-eight the whole procedure reduces to arithmetic: each eight becomes p
eights, each enclosing p times as many pegs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .complex import CfkComplex, find_unit_boxes, require_valid
from .curves import Line, MultiCurve, NotNormalForm, RawPolyline, TallEight, curve_from_complex, max_depth
from .split import HypothesisNotMet, split_ord1


class PatternError(ValueError):
    pass


@dataclass(frozen=True)
class CablePattern:
    steps: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        steps = tuple((int(p), int(q)) for p, q in self.steps)
        object.__setattr__(self, "steps", steps)
        for p, q in steps:
            check_step(p, q)

    @classmethod
    def parse(cls, text: str) -> CablePattern:
        """``"3,1"`` or ``"2,1;3,1"``; whitespace is ignored."""
        text = text.strip()
        if not text:
            return cls(())
        steps = []
        for chunk in text.split(";"):
            parts = [s.strip() for s in chunk.split(",")]
            if len(parts) != 2:
                raise PatternError(f"bad cable step {chunk!r}; expected p,q")
            try:
                steps.append((int(parts[0]), int(parts[1])))
            except ValueError:
                raise PatternError(f"bad cable step {chunk!r}; p and q must be integers") from None
        return cls(tuple(steps))

    @property
    def winding(self) -> int:
        return math.prod(p for p, _ in self.steps)

    @property
    def all_q_one(self) -> bool:
        return all(q == 1 for _, q in self.steps)

    def __str__(self):
        return ";".join(f"{p},{q}" for p, q in self.steps)


def check_step(p: int, q: int) -> None:
    if p <= 1:
        raise PatternError(f"cable winding p must exceed 1, got {p}")
    if math.gcd(p, q) != 1:
        raise PatternError(f"cable parameters must be coprime, got ({p}, {q})")


def copy_anchors(anchor: int, p: int, q: int) -> list[int]:
    # copy i is scaled by p and lowered by i*q; the -(p-1)//2 recentres the stack on the original peg
    return [p * anchor - i * q - (p - 1) // 2 for i in range(p)]


def cable(m: MultiCurve, p: int, q: int) -> MultiCurve:
    check_step(p, q)
    out = []
    for comp in m.components:
        if isinstance(comp, RawPolyline):
            raise NotNormalForm("cannot cable a raw polyline")
        if isinstance(comp, Line):
            out.append(comp)
        else:
            out.extend(TallEight(a, comp.span * p) for a in copy_anchors(comp.anchor, p, q))
    return MultiCurve(tuple(out))


def iterated_cable(m: MultiCurve, pat: CablePattern) -> MultiCurve:
    for p, q in pat.steps:
        m = cable(m, p, q)
    return m


def unit_box_curve(c: CfkComplex) -> MultiCurve:
    """Curve certified by the unit boxes of ``c``: the split when it exists, else the literal boxes."""
    require_valid(c)
    try:
        return curve_from_complex(split_ord1(c))
    except HypothesisNotMet:
        return MultiCurve(tuple(TallEight(bx.center_alexander, 1) for bx in find_unit_boxes(c)))


def cable_torsion_bound(c: CfkComplex, pat: CablePattern) -> int:
    """Lower bound on the torsion order of the cable; 0 when no unit box is certified."""
    m = unit_box_curve(c)
    if not m.eights:
        return 0
    return max_depth(iterated_cable(m, pat))
