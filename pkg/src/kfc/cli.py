"""``kfc``: command-line front end.

Exit codes: 0 success, 1 invalid complex, 2 parse or usage error,
3 splitting hypothesis not met, 4 inconsistent assertions.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .cabling import CablePattern, PatternError, iterated_cable, unit_box_curve
from .catalog import NAMES, catalog, entries
from .complex import CfkComplex, UnitBox, apply_basis_changes, find_unit_boxes, validate
from .curves import max_depth, peg_line_intersections, right_excursion_depths
from .fileformat import ParseError, parse_cfk, serialize_cfk
from .fusion import Inconsistent, KnotAssertions, format_ledger, fusion_ledger
from .homology import format_homology_report, homology_report, torsion_order
from .render import render_svg
from .split import HypothesisNotMet, split_ord1

EXIT_OK, EXIT_INVALID, EXIT_PARSE, EXIT_HYPOTHESIS, EXIT_INCONSISTENT = 0, 1, 2, 3, 4


class _Fail(Exception):
    def __init__(self, code: int, kind: str, message: str, **extra):
        self.code, self.kind, self.message, self.extra = code, kind, message, extra
        super().__init__(message)


def _emit(args, obj: dict, text: str) -> None:
    if args.format == "json":
        sys.stdout.write(json.dumps(obj, indent=2) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def load(source: str) -> CfkComplex:
    """A ``cfk v1`` file path, or a catalog name when no such file exists."""
    if os.path.exists(source):
        try:
            with open(source, encoding="utf-8") as fh:
                return parse_cfk(fh.read())
        except ParseError as e:
            raise _Fail(EXIT_PARSE, "parse-error", f"{source}: {e}", line=e.line, col=e.col) from None
        except UnicodeDecodeError as e:
            raise _Fail(EXIT_PARSE, "parse-error", f"{source}: not UTF-8 ({e.reason})") from None
    if source in NAMES:
        return catalog(source).complex
    raise _Fail(EXIT_PARSE, "no-input", f"{source}: no such file or catalog entry")


def _pattern(text: str | None) -> CablePattern | None:
    if text is None:
        return None
    try:
        return CablePattern.parse(text)
    except PatternError as e:
        raise _Fail(EXIT_PARSE, "bad-pattern", str(e)) from None


def _violation_dicts(c: CfkComplex) -> list[dict]:
    return [{"kind": v.kind, "generator": v.generator, "term": v.term, "detail": v.detail} for v in validate(c)]


def _require_valid(c: CfkComplex) -> None:
    bad = _violation_dicts(c)
    if bad:
        msg = "; ".join(f"{v['kind']} at {v['generator']}" for v in bad)
        raise _Fail(EXIT_INVALID, "invalid-complex", f"{c.name}: {msg}", violations=bad)


def _box_dict(bx: UnitBox) -> dict:
    return {"a": bx.a, "b": bx.b, "c": bx.c, "d": bx.d, "alexander": bx.center_alexander, "maslov": bx.center_maslov}


def _box_line(bx: UnitBox) -> str:
    return f"  box a={bx.a} b={bx.b} c={bx.c} d={bx.d}  center (A={bx.center_alexander}, M={bx.center_maslov})"


# --- subcommands ---------------------------------------------------------------


def cmd_validate(args) -> int:
    c = load(args.file)
    bad = _violation_dicts(c)
    lines = [f"{c.name}: {'valid' if not bad else 'INVALID'}"]
    for v in bad:
        s = f"  {v['kind']} at {v['generator']}"
        if v["term"]:
            s += f": {v['term']}"
        if v["detail"]:
            s += f" ({v['detail']})"
        lines.append(s)
    _emit(args, {"name": c.name, "valid": not bad, "violations": bad}, "\n".join(lines))
    return EXIT_INVALID if bad else EXIT_OK


def cmd_homology(args) -> int:
    c = load(args.file)
    _require_valid(c)
    rep = homology_report(c)
    _emit(args, rep, format_homology_report(rep))
    return EXIT_OK


def cmd_ord(args) -> int:
    c = load(args.file)
    _require_valid(c)
    k = torsion_order(c)
    _emit(args, {"name": c.name, "ord": k}, str(k))
    return EXIT_OK


def cmd_boxes(args) -> int:
    c = load(args.file)
    _require_valid(c)
    boxes = find_unit_boxes(c)
    text = [f"{c.name}: {len(boxes)} unit box(es) in the current basis"] + [_box_line(b) for b in boxes]
    _emit(args, {"name": c.name, "count": len(boxes), "boxes": [_box_dict(b) for b in boxes]}, "\n".join(text))
    return EXIT_OK


def cmd_split(args) -> int:
    c = load(args.file)
    _require_valid(c)
    try:
        dec = split_ord1(c)
    except HypothesisNotMet as e:
        raise _Fail(EXIT_HYPOTHESIS, "hypothesis-not-met", str(e), step=e.step) from None
    replayed = apply_basis_changes(c, dec.applied_changes)
    replay_ok = replayed == dec.assembled(c)
    if args.emit:
        with open(args.emit, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(serialize_cfk(replayed))
    text = [
        f"{c.name}: free generator {dec.free_generator} + {len(dec.boxes)} unit box(es)",
        *[_box_line(b) for b in dec.boxes],
        f"basis changes applied: {len(dec.applied_changes)}",
        f"replay check: {'ok' if replay_ok else 'FAILED'}",
    ]
    obj = {
        "name": c.name,
        "free_generator": dec.free_generator,
        "box_count": len(dec.boxes),
        "boxes": [_box_dict(b) for b in dec.boxes],
        "centers": [list(cm) for cm in dec.centers],
        "basis_changes": len(dec.applied_changes),
        "replay_ok": replay_ok,
    }
    if args.emit:
        obj["emitted"] = args.emit
        text.append(f"wrote {args.emit}")
    _emit(args, obj, "\n".join(text))
    return EXIT_OK if replay_ok else EXIT_HYPOTHESIS


def cmd_cable(args) -> int:
    c = load(args.file)
    _require_valid(c)
    pat = _pattern(args.pattern)
    m = unit_box_curve(c)
    if m.eights:
        cabled = iterated_cable(m, pat)
        bound = max_depth(cabled)
        depths = right_excursion_depths(cabled)
        eights = len(cabled.eights)
        crossings = peg_line_intersections(cabled)
    else:
        bound, depths, eights, crossings = 0, [], 0, peg_line_intersections(m)
    subject = f"{c.name}_{{{pat}}}"
    text = [
        f"{subject}: Ord_U >= {bound}" if bound else f"{subject}: no unit box certified, no bound claimed",
        f"figure-eights after cabling: {eights}",
        f"max right-excursion depth: {bound}",
    ]
    obj = {
        "name": c.name,
        "pattern": str(pat),
        "winding": pat.winding,
        "bound": bound,
        "unit_boxes": len(m.eights),
        "eights": eights,
        "peg_line_intersections": crossings,
        "depths": sorted(set(depths), reverse=True),
    }
    _emit(args, obj, "\n".join(text))
    return EXIT_OK


def cmd_bounds(args) -> int:
    c = load(args.file)
    _require_valid(c)
    if args.fusion is not None and args.fusion < 0:
        raise _Fail(EXIT_PARSE, "usage", "--fusion must be non-negative")
    a = KnotAssertions(args.ribbon, args.fusion, c, _pattern(args.pattern))
    try:
        led = fusion_ledger(a)
    except Inconsistent as e:
        raise _Fail(EXIT_INCONSISTENT, "inconsistent", str(e)) from None
    _emit(args, led.to_dict(), format_ledger(led))
    return EXIT_OK


def cmd_render(args) -> int:
    c = load(args.file)
    _require_valid(c)
    pat = _pattern(args.pattern)
    m = unit_box_curve(c)
    svg = render_svg(m, pat, title=c.name)
    with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(svg)
    panels = 4 if pat is not None and pat.steps else 1
    obj = {"name": c.name, "output": args.output, "panels": panels, "bytes": len(svg.encode())}
    _emit(args, obj, f"wrote {args.output} ({panels} panel{'s' if panels > 1 else ''}, {obj['bytes']} bytes)")
    return EXIT_OK


def cmd_catalog(args) -> int:
    if args.name is None:
        rows = []
        for e in entries():
            f = e.facts
            rows.append(
                {
                    "name": e.name,
                    "generators": len(e.complex),
                    "ribbon": f.ribbon,
                    "fusion": f.fusion,
                    "splits": f.splits,
                    "note": f.note,
                }
            )
        text = [f"{'name':<8}{'gens':>5}  {'ribbon':<7}{'F':<5}{'splits':<7}"]
        for r in rows:
            fus = "-" if r["fusion"] is None else str(r["fusion"])
            text.append(f"{r['name']:<8}{r['generators']:>5}  {str(r['ribbon']).lower():<7}{fus:<5}{str(r['splits']).lower():<7}")
        _emit(args, {"entries": rows}, "\n".join(text))
        return EXIT_OK
    if args.name not in NAMES:
        raise _Fail(EXIT_PARSE, "unknown-entry", f"unknown catalog entry {args.name!r}; known: {', '.join(NAMES)}")
    e = catalog(args.name)
    body = serialize_cfk(e.complex)
    obj = {
        "name": e.name,
        "ribbon": e.facts.ribbon,
        "fusion": e.facts.fusion,
        "splits": e.facts.splits,
        "note": e.facts.note,
        "cfk": body,
    }
    fus = "" if e.facts.fusion is None else f" fusion={e.facts.fusion}"
    header = f"# {e.name}: ribbon={str(e.facts.ribbon).lower()}{fus} splits={str(e.facts.splits).lower()}\n# {e.facts.note}\n"
    _emit(args, obj, header + body)
    return EXIT_OK


# --- wiring ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS, help="output format")

    ap = argparse.ArgumentParser(prog="kfc", description="Knot Floer complexes, torsion order, cables and fusion bounds.")
    ap.add_argument("--format", choices=("text", "json"), default="text", help="output format (default: text)")
    ap.add_argument("--version", action="version", version=f"kfc {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, fn, help_, file=True):
        p = sub.add_parser(name, help=help_, parents=[fmt])
        if file:
            p.add_argument("file", metavar="FILE", help="cfk v1 file, or a catalog name")
        p.set_defaults(func=fn)
        return p

    add("validate", cmd_validate, "check gradings, reducedness and d^2 = 0")
    add("homology", cmd_homology, "HFK^- summary and the HFK-hat table")
    add("ord", cmd_ord, "torsion order of HFK^-")
    add("boxes", cmd_boxes, "literal unit-box summands in the stored basis")
    p = add("split", cmd_split, "decompose into a free generator plus unit boxes")
    p.add_argument("--emit", metavar="OUT", help="write the complex in the split basis")
    p = add("cable", cmd_cable, "torsion-order lower bound for an iterated cable")
    p.add_argument("--pattern", required=True, metavar="P", help="cable pattern, e.g. 3,1 or 2,1;3,1")
    p = add("bounds", cmd_bounds, "fusion-number ledger")
    p.add_argument("--ribbon", action="store_true", help="assert the knot is ribbon")
    p.add_argument("--fusion", type=int, metavar="N", help="assert the fusion number of the knot")
    p.add_argument("--pattern", metavar="P", help="report on the cable of FILE along this pattern, e.g. 3,1 or 2,1;3,1")
    p = add("render", cmd_render, "draw the immersed curve (and cabling stages) as SVG")
    p.add_argument("--pattern", metavar="P", help="draw the stages of this cabling")
    p.add_argument("-o", "--output", required=True, metavar="OUT.svg")
    p = add("catalog", cmd_catalog, "list built-in complexes or print one", file=False)
    p.add_argument("name", nargs="?", metavar="NAME")
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except _Fail as f:
        if args.format == "json":
            sys.stdout.write(json.dumps({"error": f.kind, "message": f.message, **f.extra}, indent=2) + "\n")
        else:
            sys.stderr.write(f"kfc: {f.message}\n")
            for v in f.extra.get("violations", []):
                sys.stderr.write(f"  {v['kind']} at {v['generator']}: {v['term']} {v['detail']}\n")
        return f.code
    except OSError as e:
        sys.stderr.write(f"kfc: {e}\n")
        return EXIT_PARSE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
