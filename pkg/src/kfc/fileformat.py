"""The line-based ``cfk v1`` text format.

    cfk v1
    name figure8
    gen x 0 0
    gen a 0 0
    ...
    d a = U.b + V.c
    d b = V.d          # trailing comments are allowed

``gen`` lines give (gr_u, gr_v); a term is ``<monomial>.<id>`` or a bare id for
coefficient 1; generators without a ``d`` line have zero differential.
"""
from __future__ import annotations

import re

from .complex import CfkComplex, Generator
from .poly import ONE, Chain, Monomial, format_term, parse_monomial, poly

HEADER = "cfk v1"
_ID = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")
_INT = re.compile(r"[+-]?\d+\Z")


class ParseError(ValueError):
    def __init__(self, line: int, col: int, message: str):
        self.line, self.col, self.message = line, col, message
        super().__init__(f"line {line}, col {col}: {message}")


def _tokens(text: str):
    """(start column, token) pairs, columns 1-based."""
    return [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", text)]


def parse_cfk(text: str) -> CfkComplex:
    name = None
    gens: list[Generator] = []
    seen_gen: dict[str, int] = {}
    diff: dict[str, Chain] = {}
    seen_d: dict[str, int] = {}
    header_done = False
    for ln, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        toks = _tokens(body)
        if not toks:
            continue
        col, kw = toks[0]
        if not header_done:
            if [t for _, t in toks] != ["cfk", "v1"]:
                raise ParseError(ln, col, f"expected header {HEADER!r}")
            header_done = True
            continue
        if kw == "name":
            if len(toks) != 2:
                raise ParseError(ln, col, "expected: name <token>")
            if name is not None:
                raise ParseError(ln, col, "duplicate name line")
            name = toks[1][1]
        elif kw == "gen":
            if len(toks) != 4:
                raise ParseError(ln, col, "expected: gen <id> <gr_u> <gr_v>")
            (ic, gid), (uc, gu), (vc, gv) = toks[1:]
            if not _ID.match(gid):
                raise ParseError(ln, ic, f"bad generator id {gid!r}")
            if gid in seen_gen:
                raise ParseError(ln, ic, f"duplicate generator {gid!r} (first declared on line {seen_gen[gid]})")
            for c, t in ((uc, gu), (vc, gv)):
                if not _INT.match(t):
                    raise ParseError(ln, c, f"expected an integer grading, got {t!r}")
            seen_gen[gid] = ln
            gens.append(Generator(gid, int(gu), int(gv)))
        elif kw == "d":
            if len(toks) < 3 or toks[2][1] != "=":
                raise ParseError(ln, col, "expected: d <id> = <term> [+ <term>]...")
            ic, src = toks[1]
            if not _ID.match(src):
                raise ParseError(ln, ic, f"bad generator id {src!r}")
            if src in seen_d:
                raise ParseError(ln, ic, f"second differential line for {src!r} (first on line {seen_d[src]})")
            seen_d[src] = ln
            diff[src] = _parse_terms(ln, toks[3:], col_after=toks[2][0] + 1)
        else:
            raise ParseError(ln, col, f"unknown directive {kw!r}")
    if not header_done:
        raise ParseError(1, 1, f"missing header {HEADER!r}")
    return CfkComplex(name or "unnamed", tuple(gens), diff)


def _parse_terms(ln: int, toks, col_after: int) -> Chain:
    if not toks:
        raise ParseError(ln, col_after, "empty right-hand side")
    out: dict[str, set[Monomial]] = {}
    expect_term = True
    for col, t in toks:
        if expect_term:
            if t == "+":
                raise ParseError(ln, col, "expected a term, got '+'")
            mono, gid = _parse_term(ln, col, t)
            bucket = out.setdefault(gid, set())
            if mono in bucket:
                raise ParseError(ln, col, f"duplicate term {t!r}")
            bucket.add(mono)
        elif t != "+":
            raise ParseError(ln, col, f"expected '+', got {t!r}")
        expect_term = not expect_term
    if expect_term:
        raise ParseError(ln, toks[-1][0], "dangling '+'")
    return Chain({g: poly(*ms) for g, ms in out.items()})


def _parse_term(ln: int, col: int, t: str) -> tuple[Monomial, str]:
    if "." in t:
        m, gid = t.split(".", 1)
        try:
            mono = parse_monomial(m)
        except ValueError as e:
            raise ParseError(ln, col, f"bad monomial {m!r}") from e
        gcol = col + len(m) + 1
    else:
        mono, gid, gcol = ONE, t, col
    if not _ID.match(gid):
        raise ParseError(ln, gcol, f"bad generator id {gid!r}")
    return mono, gid


def serialize_cfk(c: CfkComplex) -> str:
    """Canonical text: stored generator order, terms sorted by (generator index, u, v)."""
    lines = [HEADER, f"name {c.name}"]
    lines += [f"gen {g.id} {g.gr_u} {g.gr_v}" for g in c.generators]
    idx = c.index
    for g in c.generators:
        ch = c.d(g.id)
        if not ch:
            continue
        terms = sorted(ch.terms(), key=lambda mt: (idx.get(mt[1], len(idx)), mt[1], mt[0].u_exp, mt[0].v_exp))
        lines.append(f"d {g.id} = " + " + ".join(format_term(m, t) for m, t in terms))
    return "\n".join(lines) + "\n"


def read_cfk(path) -> CfkComplex:
    with open(path, encoding="utf-8") as fh:
        return parse_cfk(fh.read())


def write_cfk(c: CfkComplex, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_cfk(c))
