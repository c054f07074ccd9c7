"""Knot Floer complexes over F2[U,V]: torsion order, unit boxes, cabled curves and fusion-number bounds."""
from __future__ import annotations

__version__ = "0.1.0"

from .cabling import CablePattern, cable, cable_torsion_bound, iterated_cable
from .catalog import catalog
from .complex import (
    BasisChange,
    CfkComplex,
    Generator,
    UnitBox,
    apply_basis_change,
    box_sum,
    direct_sum,
    find_unit_boxes,
    validate,
)
from .curves import Line, MultiCurve, TallEight, curve_from_complex, max_depth
from .fileformat import parse_cfk, serialize_cfk
from .fusion import KnotAssertions, fusion_ledger
from .homology import hat_table, hfk_minus, torsion_order
from .split import BoxDecomposition, HypothesisNotMet, obfuscate, split_ord1
