import random

import pytest
from hypothesis import given, settings, strategies as st

from kfc.catalog import catalog, trefoil_staircase
from kfc.complex import (
    CfkComplex,
    Generator,
    InvalidComplex,
    apply_basis_changes,
    box_complex,
    box_sum,
    direct_sum,
    single_generator,
    validate,
)
from kfc.homology import hat_table, hfk_minus
from kfc.poly import ONE, U, chain
from kfc.split import HypothesisNotMet, obfuscate, split_ord1

C_11N42 = [(1, 1), (1, 0), (0, 0), (0, 0), (0, -1), (0, -1), (-1, -1), (-1, -2)]
C_11N34 = [(2, 2), (2, 1), (1, 1), (1, 0), (-1, -1), (-1, -2), (-2, -2), (-2, -3)]


def check_replay(c, dec):
    assert apply_basis_changes(c, dec.applied_changes) == dec.assembled(c)


def test_figure_eight():
    c = catalog("4_1").complex
    dec = split_ord1(c)
    assert dec.free_generator == "x"
    assert [b.center for b in dec.boxes] == [(0, 0)]
    check_replay(c, dec)


@pytest.mark.parametrize("name,centers", [("11n42", C_11N42), ("11n34", C_11N34)])
def test_eleven_crossing_entries(name, centers):
    c = catalog(name).complex
    dec = split_ord1(c)
    assert len(dec.boxes) == 8 == (len(c) - 1) // 4
    assert sorted(dec.centers) == sorted(centers)
    check_replay(c, dec)


def test_trefoil_has_no_v_partner():
    with pytest.raises(HypothesisNotMet) as e:
        split_ord1(trefoil_staircase())
    assert e.value.step == "v-partner"


def test_unknot_splits_trivially():
    dec = split_ord1(single_generator())
    assert dec.boxes == () and dec.free_generator == "x"


def test_higher_torsion_rejected():
    c = direct_sum(single_generator(), box_complex(0, 0, u_exp=2))
    with pytest.raises(HypothesisNotMet) as e:
        split_ord1(c)
    assert e.value.step == "torsion-order"


def test_free_rank_two_rejected():
    c = direct_sum(single_generator(), single_generator())
    with pytest.raises(HypothesisNotMet) as e:
        split_ord1(c)
    assert e.value.step == "free-rank"


def test_invalid_input_raises_validation_error():
    c = CfkComplex("bad", (Generator.at("a", 0, 0), Generator.at("b", 0, -1)), {"a": chain(b=ONE)})
    with pytest.raises(InvalidComplex):
        split_ord1(c)


def test_obfuscate_zero_steps_is_identity():
    c = catalog("4_1").complex
    o, changes = obfuscate(c, seed=1, steps=0)
    assert o == c and changes == []


def test_obfuscate_keeps_homology():
    c = catalog("4_1").complex
    o, _ = obfuscate(c, seed=7, steps=50)
    assert validate(o) == []
    assert hat_table(o) == hat_table(c)
    assert hfk_minus(o).torsion_exponents == hfk_minus(c).torsion_exponents


def test_obfuscate_is_seeded(monkeypatch):
    c = box_sum(C_11N42)
    assert obfuscate(c, seed=5, steps=30) == obfuscate(c, seed=5, steps=30)
    monkeypatch.setenv("KFC_SEED", "5")
    assert obfuscate(c, steps=30) == obfuscate(c, seed=5, steps=30)


def test_eight_boxes_after_200_steps():
    centers = [(0, 0), (1, 1), (-1, -1), (0, 0), (2, 1), (1, 0), (0, -1), (-2, -2)]
    c = box_sum(centers)
    o, _ = obfuscate(c, seed=3, steps=200)
    dec = split_ord1(o)
    assert sorted(dec.centers) == sorted(centers)
    check_replay(o, dec)


@pytest.mark.parametrize("name", ["4_1", "6_1", "11n42", "11n34"])
def test_catalog_obfuscated(name):
    c = catalog(name).complex
    expect = sorted(split_ord1(c).centers)
    for seed in range(10):
        o, _ = obfuscate(c, seed=seed, steps=200)
        dec = split_ord1(o)
        assert sorted(dec.centers) == expect
        check_replay(o, dec)


@settings(max_examples=300, deadline=None)
@given(
    st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), max_size=16),
    st.integers(0, 2**31 - 1),
    st.integers(0, 200),
)
def test_box_sum_recovery(centers, seed, steps):
    o, _ = obfuscate(box_sum(centers), seed=seed, steps=steps)
    dec = split_ord1(o)
    assert len(dec.boxes) == len(centers)
    assert sorted(dec.centers) == sorted(centers)
    check_replay(o, dec)


def test_split_is_deterministic():
    o, _ = obfuscate(box_sum(C_11N34), seed=11, steps=150)
    assert split_ord1(o) == split_ord1(o)


def test_free_generator_away_from_origin_is_found():
    rng = random.Random(0)
    centers = [(rng.randint(-2, 2), rng.randint(-2, 2)) for _ in range(6)]
    c = box_sum(centers, free=(1, 3))
    o, _ = obfuscate(c, seed=2, steps=100)
    dec = split_ord1(o)
    assert sorted(dec.centers) == sorted(centers)
    assert o.by_id[dec.free_generator].bigrading == c.by_id["x"].bigrading
