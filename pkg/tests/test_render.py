import re
import xml.etree.ElementTree as ET

from kfc.cabling import CablePattern
from kfc.curves import Line, MultiCurve, TallEight
from kfc.render import render_svg

NS = "{http://www.w3.org/2000/svg}"
UNIT = MultiCurve((Line(), TallEight(0, 1)))


def parse(svg):
    return ET.fromstring(svg)


def paths(root):
    return [e for e in root.iter(f"{NS}path")]


def test_unit_curve_single_panel():
    root = parse(render_svg(UNIT))
    assert len(root.findall(f"{NS}g")) == 1
    ps = paths(root)
    assert len(ps) == 2
    assert ps[1].get("d").endswith("Z")  # the figure-eight is closed
    assert any(c.get("id") == "panel-1-peg-0" for c in root.iter(f"{NS}circle"))


def test_cabling_stages_have_four_panels_and_highlight():
    svg = render_svg(UNIT, CablePattern.parse("3,1"))
    root = parse(svg)
    panels = root.findall(f"{NS}g")
    assert [g.get("id") for g in panels] == ["panel-1", "panel-2", "panel-3", "panel-4"]
    hi = [p for p in paths(root) if "excursion" in p.get("id")]
    assert len(hi) == 1 and hi[0].get("id").startswith("panel-4")
    assert "excursion past 3 pegs" in svg


def test_empty_curve_has_pegs_only():
    root = parse(render_svg(MultiCurve()))
    assert paths(root) == []
    assert len(list(root.iter(f"{NS}circle"))) >= 1


def test_output_is_deterministic_and_ids_unique():
    a = render_svg(UNIT, CablePattern.parse("2,1;3,1"))
    assert a == render_svg(UNIT, CablePattern.parse("2,1;3,1"))
    ids = re.findall(r'id="([^"]+)"', a)
    assert len(ids) == len(set(ids))
