import pytest
from hypothesis import given, settings

from conftest import box_sums
from oracle import hat_dims, predicted_dims, truncated_dims
from kfc.catalog import catalog
from kfc.complex import box_complex, box_sum, direct_sum, single_generator
from kfc.homology import (
    column_ranks,
    format_hat_grid,
    format_homology_report,
    hat_rank,
    hat_table,
    hfk_minus,
    homology_report,
    reduce_mod_u,
    reduce_mod_v,
    torsion_order,
    u_module_homology,
)


def test_reduce_mod_v_examples():
    assert reduce_mod_v(box_complex()).differential == {"a": {"b": 1}, "c": {"d": 1}}
    assert reduce_mod_v(single_generator()).differential == {}
    assert reduce_mod_v(box_complex(u_exp=2)).differential == {"a": {"b": 2}, "c": {"d": 2}}
    assert reduce_mod_u(box_complex()).differential == {"a": {"c": 1}, "b": {"d": 1}}


@pytest.mark.parametrize(
    "c,free,tors,N",
    [
        (box_complex(), 0, (1, 1), 3),
        (catalog("4_1").complex, 1, (1, 1), 3),
        (box_complex(u_exp=2), 0, (2, 2), 5),
    ],
)
def test_module_structure_against_oracle(c, free, tors, N):
    s = u_module_homology(reduce_mod_v(c))
    assert (s.free_rank, s.torsion_exponents) == (free, tors)
    assert truncated_dims(c, N) == predicted_dims(s.summands, N)


def test_torsion_order_examples():
    assert torsion_order(single_generator()) == 0
    assert torsion_order(catalog("4_1").complex) == 1
    assert torsion_order(direct_sum(box_complex(u_exp=2), box_complex())) == 2


def test_hat_table_examples():
    assert hat_table(catalog("4_1").complex) == {(-1, -1): 1, (0, 0): 3, (1, 1): 1}
    assert hat_rank(catalog("11n42").complex) == 33
    t = hat_table(catalog("11n34").complex)
    assert sum(t.values()) == 33
    assert list(column_ranks(t).values()) == [2, 6, 6, 5, 6, 6, 2]
    assert list(column_ranks(hat_table(catalog("11n42").complex)).values()) == [2, 8, 13, 8, 2]


@pytest.mark.parametrize("name", ["unknot", "trefoil", "4_1", "6_1", "11n42", "11n34"])
def test_catalog_symmetry_and_hat_oracle(name):
    c = catalog(name).complex
    assert torsion_order(c, via="V") == torsion_order(c, via="U")
    assert hat_table(c) == hat_dims(c)
    s = hfk_minus(c)
    assert hat_rank(c) == s.free_rank + 2 * len(s.torsion_exponents)


def test_graded_table_counts_summands():
    s = hfk_minus(catalog("4_1").complex)
    assert sum(s.graded_table.values()) == s.free_rank + len(s.torsion_exponents)


@settings(max_examples=300, deadline=None)
@given(box_sums(max_boxes=6, max_exp=3))
def test_oracle_three_truncations(c):
    s = hfk_minus(c)
    k = s.torsion_order
    for N in (max(k, 1), k + 1, 2 * k + 2):
        assert truncated_dims(c, N) == predicted_dims(s.summands, N)


@settings(max_examples=200, deadline=None)
@given(box_sums(max_boxes=5, max_exp=3), box_sums(max_boxes=5, max_exp=3))
def test_torsion_order_of_sum_is_max(a, b):
    assert torsion_order(direct_sum(a, b)) == max(torsion_order(a), torsion_order(b))


@settings(max_examples=200, deadline=None)
@given(box_sums(max_boxes=16))
def test_unit_box_sums(c):
    n = (len(c) - 1) // 4
    assert hat_rank(c) == 1 + 4 * n
    assert torsion_order(c) == (1 if n else 0)
    assert hat_table(c) == hat_dims(c)


def test_text_report():
    rep = homology_report(catalog("4_1").complex)
    text = format_homology_report(rep)
    assert "Ord_U: 1" in text and "HFK-hat total rank: 5" in text
    assert format_hat_grid({}) == "(zero)"
