import pytest

from kfc.catalog import (
    HAT_11N34,
    HAT_11N42,
    NAMES,
    RankEquationError,
    UnknownKnot,
    catalog,
    entries,
    solve_box_centers,
)
from kfc.complex import validate
from kfc.homology import hat_rank, hat_table, torsion_order
from kfc.split import HypothesisNotMet, split_ord1


def test_all_entries_valid():
    assert [e.name for e in entries()] == list(NAMES)
    for e in entries():
        assert validate(e.complex) == []


def test_splits_tag_matches_behaviour():
    for e in entries():
        if e.facts.splits:
            split_ord1(e.complex)
        else:
            with pytest.raises(HypothesisNotMet):
                split_ord1(e.complex)


def test_11n42():
    e = catalog("11n42")
    assert hat_rank(e.complex) == 33
    assert hat_table(e.complex) == HAT_11N42
    assert len(split_ord1(e.complex).boxes) == 8
    assert e.facts.ribbon and e.facts.fusion == 1


def test_11n34_table():
    assert hat_table(catalog("11n34").complex) == HAT_11N34


def test_6_1():
    e = catalog("6_1")
    assert hat_rank(e.complex) == 9
    assert [b.center for b in split_ord1(e.complex).boxes] == [(0, 0), (0, 0)]
    assert e.facts.ribbon and e.facts.fusion == 1
    assert "reconstructed" in e.facts.note


def test_trefoil():
    e = catalog("trefoil")
    assert torsion_order(e.complex) == 1
    assert not e.facts.splits and not e.facts.ribbon


def test_unknown_name():
    with pytest.raises(UnknownKnot):
        catalog("5_2")


def test_rank_solver_centers():
    assert sorted(solve_box_centers(HAT_11N42)) == sorted(
        [(1, 1), (1, 0), (0, 0), (0, 0), (0, -1), (0, -1), (-1, -1), (-1, -2)]
    )
    assert solve_box_centers({(0, 0): 1}) == []


def test_rank_solver_rejects_impossible_tables():
    with pytest.raises(RankEquationError):
        solve_box_centers({(1, 0): 1, (0, 0): 1})
    with pytest.raises(RankEquationError):
        solve_box_centers({(1, 1): 1, (0, 0): 1})
