"""Deterministic SVG drawings of multicurves and of the stages of a cabling.

Output depends only on the input: element ids are positional, numbers are
printed with a fixed precision, and nothing time- or environment-dependent is
written.  Smooth components are drawn as Catmull-Rom splines through the
control points from ``curves``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cabling import CablePattern, cable, iterated_cable
from .curves import Line, MultiCurve, RawPolyline, TallEight, eight_outline, line_outline, right_lobe

SCALE = 36  # pixels per unit
PAD = 24
GAP = 36
TITLE_H = 22
PEG_R = 3.0

STROKE = "#1f4e99"
HIGHLIGHT = "#c0392b"
PEG = "#222222"


def fmt(v) -> str:
    s = f"{float(v):.2f}"
    s = s.rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def _kid(k: int) -> str:
    return f"n{-k}" if k < 0 else str(k)


@dataclass
class _Item:
    kind: str  # "closed" | "open"
    points: tuple
    color: str = STROKE
    width: float = 2.0
    dx: Fraction = Fraction(0)
    sy: int = 1
    dy: Fraction = Fraction(0)

    def placed(self):
        return [(x + self.dx, y * self.sy + self.dy) for x, y in self.points]


@dataclass
class _Panel:
    title: str
    items: list
    peg_columns: list  # (x, [heights])

    def bounds(self):
        xs, ys = [], []
        for it in self.items:
            for x, y in it.placed():
                xs.append(x)
                ys.append(y)
        for x, hs in self.peg_columns:
            xs.append(x)
            ys.extend(hs)
        if not xs:
            return Fraction(-1), Fraction(1), Fraction(-1), Fraction(1)
        return min(xs) - 1, max(xs) + 1, min(ys) - 1, max(ys) + 1


def _catmull_rom(pts, closed: bool) -> str:
    n = len(pts)
    if n < 2:
        return ""
    if n == 2 and not closed:
        (x0, y0), (x1, y1) = pts
        return f"M {fmt(x0)} {fmt(y0)} L {fmt(x1)} {fmt(y1)}"
    out = [f"M {fmt(pts[0][0])} {fmt(pts[0][1])}"]
    segs = n if closed else n - 1
    for i in range(segs):
        p0 = pts[(i - 1) % n] if closed or i > 0 else pts[0]
        p1 = pts[i]
        p2 = pts[(i + 1) % n]
        p3 = pts[(i + 2) % n] if closed or i + 2 < n else pts[-1]
        c1 = (p1[0] + (p2[0] - p0[0]) / 6, p1[1] + (p2[1] - p0[1]) / 6)
        c2 = (p2[0] - (p3[0] - p1[0]) / 6, p2[1] - (p3[1] - p1[1]) / 6)
        out.append(f"C {fmt(c1[0])} {fmt(c1[1])} {fmt(c2[0])} {fmt(c2[1])} {fmt(p2[0])} {fmt(p2[1])}")
    if closed:
        out.append("Z")
    return " ".join(out)


def _peg_range(m: MultiCurve) -> list[int]:
    lo, hi = 0, 0
    for e in m.eights:
        lo, hi = min(lo, e.anchor), max(hi, e.anchor + e.span - 1)
    return list(range(lo - 1, hi + 2))


def _curve_panel(title: str, m: MultiCurve, highlight: TallEight | None = None) -> _Panel:
    items = []
    width = max((e.span for e in m.eights), default=1)
    for comp in m.components:
        if isinstance(comp, Line):
            items.append(_Item("open", line_outline(comp, Fraction(-1), Fraction(width + 1)).points))
        elif isinstance(comp, TallEight):
            items.append(_Item("closed", eight_outline(comp).points))
        elif isinstance(comp, RawPolyline):
            items.append(_Item("closed", comp.points))
    if highlight is not None:
        items.append(_Item("open", right_lobe(highlight).points, HIGHLIGHT, 3.5))
    return _Panel(title, items, [(Fraction(0), _peg_range(m))])


def _copies_panel(m: MultiCurve, p: int, q: int) -> _Panel:
    """p copies scaled vertically by p, each q lower than the previous, side by side."""
    width = max((e.span for e in m.eights), default=1)
    step = Fraction(width + 2)
    items, cols = [], []
    base = _peg_range(m)
    for i in range(p):
        dx, dy = step * i, Fraction(-i * q - (p - 1) // 2)
        for comp in m.components:
            if isinstance(comp, TallEight):
                outline = eight_outline(comp).points
                # stretch vertically about the pegs, keeping the left lobe hugging its column
                items.append(_Item("closed", outline, dx=dx, sy=p, dy=dy))
        cols.append((dx, [p * k + dy for k in base]))
    for line in m.lines:
        items.append(_Item("open", line_outline(line, Fraction(-1), step * p).points))
    return _Panel(f"{p} copies, scaled by {p}, lowered by {q}", items, cols)


def _panel_svg(k: int, panel: _Panel, x0: float) -> tuple[list[str], float, float]:
    xmin, xmax, ymin, ymax = panel.bounds()
    w = float(xmax - xmin) * SCALE
    h = float(ymax - ymin) * SCALE

    def tx(x):
        return x0 + float(x - xmin) * SCALE

    def ty(y):
        return TITLE_H + PAD + float(ymax - y) * SCALE

    out = [f'<g id="panel-{k}">']
    out.append(
        f'<text id="panel-{k}-title" x="{fmt(x0 + w / 2)}" y="{fmt(PAD)}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13">{panel.title}</text>'
    )
    for c, (px, hs) in enumerate(panel.peg_columns):
        for hgt in hs:
            pid = f"panel-{k}-peg-{_kid(int(hgt))}" if len(panel.peg_columns) == 1 else f"panel-{k}-col-{c}-peg-{_kid(int(hgt))}"
            out.append(f'<circle id="{pid}" cx="{fmt(tx(px))}" cy="{fmt(ty(hgt))}" r="{fmt(PEG_R)}" fill="{PEG}"/>')
    for j, it in enumerate(panel.items):
        pts = [(tx(x), ty(y)) for x, y in it.placed()]
        d = _catmull_rom(pts, it.kind == "closed")
        role = "excursion" if it.color == HIGHLIGHT else "comp"
        out.append(
            f'<path id="panel-{k}-{role}-{j}" d="{d}" fill="none" stroke="{it.color}" '
            f'stroke-width="{fmt(it.width)}" stroke-linejoin="round"/>'
        )
    out.append("</g>")
    return out, w, h + TITLE_H + 2 * PAD


def _document(panels: list[_Panel]) -> str:
    body, x, height = [], float(PAD), 0.0
    for k, panel in enumerate(panels, start=1):
        part, w, h = _panel_svg(k, panel, x)
        body.extend(part)
        x += w + GAP
        height = max(height, h)
    width = x - GAP + PAD
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{fmt(width)}" height="{fmt(height)}" '
        f'viewBox="0 0 {fmt(width)} {fmt(height)}">'
    )
    bg = f'<rect id="background" x="0" y="0" width="{fmt(width)}" height="{fmt(height)}" fill="#ffffff"/>'
    return "\n".join([head, bg, *body, "</svg>"]) + "\n"


def render_svg(m: MultiCurve, pattern: CablePattern | None = None, title: str = "") -> str:
    """One panel for the curve, or four cabling-stage panels when a pattern is given.

    With an iterated pattern the staged panels show the last step applied to
    the curve already cabled by the earlier steps.
    """
    if pattern is None or not pattern.steps:
        return _document([_curve_panel(title or "immersed curve", m)])
    *prefix, (p, q) = pattern.steps
    before = iterated_cable(m, CablePattern(tuple(prefix)))
    after = cable(before, p, q)
    deepest = max(after.eights, key=lambda e: (e.span, -e.anchor), default=None)
    label = f"({p},{q})-cable"
    panels = [
        _curve_panel(title or "before cabling", before),
        _copies_panel(before, p, q),
        _curve_panel(f"{label}: pegs aligned", after),
        _curve_panel(
            f"{label}: excursion past {deepest.span} pegs" if deepest else f"{label}: no excursion",
            after,
            highlight=deepest,
        ),
    ]
    return _document(panels)


