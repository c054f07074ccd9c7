"""Interval bookkeeping for the fusion numbers F, F_sh, F_h of a ribbon knot or its cable.

Rules contribute bounds independently; ``close_ledger`` intersects them, pushes
them through F_h <= F_sh <= F, and keeps, for every bound, the rule that set it.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .cabling import CablePattern, cable_torsion_bound
from .complex import CfkComplex
from .homology import hat_rank, torsion_order

ROWS = ("F_h", "F_sh", "F")

CITATIONS = {
    "assert-ribbon": "user assertion: the knot is ribbon (not verified)",
    "assert-fusion": "user assertion: fusion number of the companion knot",
    "ord-lower": "the torsion order of HFK^- is a lower bound for the fusion number of a ribbon knot "
    "(Juhasz-Miller-Zemke)",
    "cable-lower": "a unit box forces torsion order at least p1*...*pn on the iterated cable, "
    "read off from the depth of the cabled figure-eight",
    "cable-upper": "n bands for K give a ribbon disk for K_{p,1} with p*n bands whose complement "
    "needs only n 2-handles; iterate along the pattern",
    "known-fusion": "asserted fusion number of the knot itself",
    "unknot-detect": "knot Floer homology detects the unknot: hat-rank 1 means the unknot, "
    "which bounds a disk with no bands",
    "nontrivial-sh": "knot Floer homology detects the unknot, and only the unknot has strong homotopy "
    "fusion number zero",
    "chain": "F_h <= F_sh <= F",
}


class Inconsistent(ValueError):
    """Assertions and derived bounds leave an empty interval."""


@dataclass(frozen=True)
class KnotAssertions:
    is_ribbon: bool = False
    known_fusion: int | None = None
    complex: CfkComplex | None = None
    pattern: CablePattern | None = None


@dataclass(frozen=True)
class Bound:
    row: str
    lower: int = 0
    upper: int | None = None


@dataclass(frozen=True)
class PartialLedger:
    rule: str
    bounds: tuple[Bound, ...] = ()
    note: str | None = None


@dataclass
class Row:
    lower: int = 0
    upper: int | None = None
    lower_rule: str | None = None
    upper_rule: str | None = None

    @property
    def exact(self) -> bool:
        return self.upper is not None and self.lower == self.upper

    def tighten(self, lo: int, hi: int | None, rule: str) -> bool:
        changed = False
        if lo > self.lower:
            self.lower, self.lower_rule, changed = lo, rule, True
        if hi is not None and (self.upper is None or hi < self.upper):
            self.upper, self.upper_rule, changed = hi, rule, True
        return changed

    def text(self) -> str:
        if self.exact:
            return f"= {self.lower} (exact)"
        if self.upper is None:
            return f"[{self.lower}, inf)"
        return f"[{self.lower}, {self.upper}]"


@dataclass
class FusionLedger:
    rows: dict[str, Row] = field(default_factory=lambda: {r: Row() for r in ROWS})
    derivation: list[tuple[str, str]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    subject: str = ""

    def __getitem__(self, row: str) -> Row:
        return self.rows[row]

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "rows": {
                name: {
                    "lower": r.lower,
                    "upper": r.upper,
                    "exact": r.exact,
                    "lower_rule": r.lower_rule,
                    "upper_rule": r.upper_rule,
                }
                for name, r in self.rows.items()
            },
            "derivation": [{"rule": k, "citation": c} for k, c in self.derivation],
            "notes": list(self.notes),
        }


# --- rules ------------------------------------------------------------------


def ord_lower_rule(a: KnotAssertions) -> PartialLedger | None:
    if not a.is_ribbon or a.complex is None:
        return None
    if a.pattern is None or not a.pattern.steps:
        return PartialLedger("ord-lower", (Bound("F", torsion_order(a.complex)),))
    if not a.pattern.all_q_one:
        return PartialLedger("cable-lower", note="cable-lower skipped: the cable is only known to be ribbon when every q = 1")
    return PartialLedger("cable-lower", (Bound("F", cable_torsion_bound(a.complex, a.pattern)),))


def cable_upper_rule(a: KnotAssertions) -> PartialLedger | None:
    if not a.is_ribbon or a.known_fusion is None or a.pattern is None or not a.pattern.steps:
        return None
    if not a.pattern.all_q_one:
        return PartialLedger("cable-upper", note="cable-upper skipped: needs every q = 1")
    n = a.known_fusion
    # F_sh of each prefix cable is at most F of the previous stage; the first stage gives n
    prefix_f = [n]
    for p, _ in a.pattern.steps:
        prefix_f.append(prefix_f[-1] * p)
    return PartialLedger("cable-upper", (Bound("F", 0, prefix_f[-1]), Bound("F_sh", 0, min(prefix_f[:-1]))))


def known_fusion_rule(a: KnotAssertions) -> PartialLedger | None:
    if a.known_fusion is None or (a.pattern is not None and a.pattern.steps):
        return None
    n = a.known_fusion
    return PartialLedger("known-fusion", (Bound("F", n, n),))


def _unknotted_subject(a: KnotAssertions) -> bool:
    if a.complex is None or hat_rank(a.complex) != 1:
        return False
    # a cable of the unknot is a torus knot, which is trivial only for |q| = 1
    return a.pattern is None or all(abs(q) == 1 for _, q in a.pattern.steps)


def unknot_detect_rule(a: KnotAssertions) -> PartialLedger | None:
    if not a.is_ribbon or not _unknotted_subject(a):
        return None
    return PartialLedger("unknot-detect", tuple(Bound(r, 0, 0) for r in ROWS))


def nontrivial_sh_rule(a: KnotAssertions) -> PartialLedger | None:
    if not a.is_ribbon or a.complex is None or hat_rank(a.complex) <= 1:
        return None
    return PartialLedger("nontrivial-sh", (Bound("F_sh", 1),))


RULES = (ord_lower_rule, cable_upper_rule, known_fusion_rule, unknot_detect_rule, nontrivial_sh_rule)


def close_ledger(parts: list[PartialLedger], a: KnotAssertions) -> FusionLedger:
    led = FusionLedger()
    led.subject = _subject(a)
    if a.is_ribbon:
        led.derivation.append(("assert-ribbon", CITATIONS["assert-ribbon"]))
    if a.known_fusion is not None:
        led.derivation.append(("assert-fusion", f"{CITATIONS['assert-fusion']} = {a.known_fusion}"))
    for part in parts:
        if part.note:
            led.notes.append(part.note)
        for b in part.bounds:
            led.rows[b.row].tighten(b.lower, b.upper, part.rule)
            _check(led, b.row)
        if part.bounds:
            led.derivation.append((part.rule, CITATIONS[part.rule]))
    # propagate through F_h <= F_sh <= F until nothing moves
    chained = False
    changed = True
    while changed:
        changed = False
        for lo, hi in (("F_h", "F_sh"), ("F_sh", "F")):
            small, big = led.rows[lo], led.rows[hi]
            if big.upper is not None:
                changed |= small.tighten(0, big.upper, "chain")
            changed |= big.tighten(small.lower, None, "chain")
            _check(led, lo)
            _check(led, hi)
        chained |= changed
    if chained:
        led.derivation.append(("chain", CITATIONS["chain"]))
    if a.is_ribbon and not led.rows["F"].exact:
        led.notes.append("branched-cover lower bounds are not implemented; F may exceed the reported lower bound")
    return led


def _check(led: FusionLedger, row: str) -> None:
    r = led.rows[row]
    if r.upper is not None and r.lower > r.upper:
        raise Inconsistent(f"{row}: lower bound {r.lower} ({r.lower_rule}) exceeds upper bound {r.upper} ({r.upper_rule})")


def _subject(a: KnotAssertions) -> str:
    base = a.complex.name if a.complex is not None else "K"
    if a.pattern is not None and a.pattern.steps:
        return f"{base}_{{{a.pattern}}}"
    return base


def fusion_ledger(a: KnotAssertions, disabled: frozenset[str] = frozenset()) -> FusionLedger:
    """Evaluate every rule (minus ``disabled`` rule ids) and close the result."""
    if a.known_fusion is not None and not a.is_ribbon:
        raise Inconsistent("a fusion number was asserted for a knot not asserted ribbon")
    if a.known_fusion is not None and a.known_fusion < 0:
        raise Inconsistent("fusion numbers are non-negative")
    parts = []
    for rule in RULES:
        part = rule(a)
        if part is not None and part.rule not in disabled:
            parts.append(part)
    return close_ledger(parts, a)


def format_ledger(led: FusionLedger) -> str:
    lines = [f"subject: {led.subject}"]
    for name in ROWS:
        lines.append(f"{name:<5}{led.rows[name].text()}")
    if led.derivation:
        lines.append("derivation:")
        lines.extend(f"  {rule}: {cite}" for rule, cite in led.derivation)
    for n in led.notes:
        lines.append(f"note: {n}")
    return "\n".join(lines)
