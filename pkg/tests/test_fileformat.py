import pytest
from hypothesis import given, settings, strategies as st

from conftest import box_sums
from kfc.catalog import NAMES, catalog
from kfc.complex import box_complex, single_generator, validate
from kfc.fileformat import ParseError, parse_cfk, serialize_cfk
from kfc.split import obfuscate

UNIT_BOX = """cfk v1
gen a 0 0
gen b 1 -1
gen c -1 1
gen d 0 0
d a = U.b + V.c
d b = V.d
d c = U.d
"""


def test_unit_box_file():
    c = parse_cfk(UNIT_BOX)
    assert len(c) == 4 and validate(c) == []
    assert c.differential == box_complex().differential


def test_comments_blank_lines_and_names():
    c = parse_cfk("# leading comment\n\ncfk v1   # header\nname  k   \ngen x 0 0  # the only one\n")
    assert c.name == "k" and [g.id for g in c.generators] == ["x"]


@pytest.mark.parametrize(
    "text,line,col,needle",
    [
        ("cfk v1\ngen a 0 0\ngen b 1 -1\nd a = U.b + U.b\n", 4, 13, "duplicate term"),
        ("cfk v1\ngen a 0 0\ngen a 0 0\n", 3, 5, "duplicate generator"),
        ("cfk v2\n", 1, 1, "header"),
        ("cfk v1\ngen a 0 x\n", 2, 9, "integer"),
        ("cfk v1\ngen a 0 0\nd a = Q.b\n", 3, 7, "monomial"),
        ("cfk v1\ngen a 0 0\nd a = U.b +\n", 3, 11, "dangling"),
        ("cfk v1\ngen a 0 0\nd a U.b\n", 3, 1, "expected"),
        ("cfk v1\nfoo\n", 2, 1, "unknown directive"),
        ("", 1, 1, "missing header"),
        ("cfk v1\ngen a 0 0\nd a = U.b\nd a = V.b\n", 4, 3, "second differential"),
    ],
)
def test_parse_errors(text, line, col, needle):
    with pytest.raises(ParseError) as e:
        parse_cfk(text)
    assert (e.value.line, e.value.col) == (line, col)
    assert needle in str(e.value)


def test_serialize_examples():
    assert serialize_cfk(single_generator()) == "cfk v1\nname unknot\ngen x 0 0\n"
    assert "d a = U.b + V.c\n" in serialize_cfk(box_complex())


def test_serialize_orders_terms_by_generator_index():
    text = "cfk v1\nname t\ngen a 0 0\ngen c -1 1\ngen b 1 -1\ngen d 0 0\nd a = U.b + V.c\nd b = V.d\nd c = U.d\n"
    assert "d a = V.c + U.b" in serialize_cfk(parse_cfk(text))


def test_catalog_texts_are_distinct_and_round_trip():
    texts = set()
    for n in NAMES:
        c = catalog(n).complex
        t = serialize_cfk(c)
        assert parse_cfk(t) == c
        texts.add(t)
    assert len(texts) == len(NAMES)


@settings(max_examples=300, deadline=None)
@given(box_sums(max_boxes=6, max_exp=3), st.integers(0, 10**6))
def test_round_trip_property(c, seed):
    o, _ = obfuscate(c, seed=seed, steps=40)
    t = serialize_cfk(o)
    assert parse_cfk(t) == o
    assert serialize_cfk(parse_cfk(t)) == t
