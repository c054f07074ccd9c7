import pytest
from hypothesis import given, settings, strategies as st

from kfc.poly import (
    EXPONENT_CAP,
    ONE,
    U,
    V,
    ZERO,
    BivariatePoly,
    Chain,
    ExponentError,
    Monomial,
    chain,
    chain_scale_add,
    format_monomial,
    format_term,
    mono_mul,
    parse_monomial,
    poly,
    poly_add,
    specialize,
)

monos = st.builds(Monomial, st.integers(0, 6), st.integers(0, 6))
polys = st.builds(BivariatePoly, st.lists(monos, max_size=8))


def M(u, v):
    return Monomial(u, v)


def test_mono_mul_examples():
    assert mono_mul(M(2, 0), M(0, 1)) == M(2, 1)
    assert mono_mul(M(0, 0), M(3, 5)) == M(3, 5)
    assert mono_mul(M(1, 1), M(1, 1)) == M(2, 2)


def test_exponent_cap():
    with pytest.raises(ExponentError):
        mono_mul(M(EXPONENT_CAP, 0), M(1, 0))
    with pytest.raises(ExponentError):
        Monomial(-1, 0)


def test_poly_add_examples():
    assert poly_add(poly(U), poly(U)) == ZERO
    assert poly_add(poly(U), poly(V)) == poly(U, V)
    assert poly_add(poly(U, M(1, 1)), poly(M(1, 1), V)) == poly(U, V)


def test_duplicates_cancel_on_construction():
    assert poly(U, U, V) == poly(V)
    assert poly(V, U) == poly(U, V)
    assert poly(V, U).terms == tuple(sorted((U, V)))


def test_chain_scale_add_examples():
    assert chain_scale_add(chain(b=U), ONE, chain(b=U)) == Chain()
    assert chain_scale_add(Chain(), ONE, chain(d=V)) == chain(d=V)
    assert chain_scale_add(chain(b=U), V, chain(c=U)) == Chain({"b": poly(U), "c": poly(M(1, 1))})


def test_chain_drops_zero_entries():
    assert len(Chain({"a": ZERO, "b": poly(U)})) == 1


def test_specialize_examples():
    assert specialize(poly(U, V), "V") == poly(U)
    assert specialize(poly(U, V), "UV") == ZERO
    assert specialize(poly(M(0, 2)), "U") == poly(M(0, 2))
    with pytest.raises(ValueError):
        specialize(poly(U), "W")


@pytest.mark.parametrize("text,mono", [("U", U), ("V3", M(0, 3)), ("U2V1", M(2, 1)), ("UV", M(1, 1)), ("1", None)])
def test_monomial_syntax(text, mono):
    if mono is None:
        with pytest.raises(ValueError):
            parse_monomial(text)
        return
    assert parse_monomial(text) == mono
    assert parse_monomial(format_monomial(mono)) == mono


def test_term_format():
    assert format_term(ONE, "b") == "b"
    assert format_term(M(2, 1), "b") == "U2V.b"


@settings(max_examples=10_000, deadline=None)
@given(polys, polys, polys)
def test_poly_add_laws(p, q, r):
    assert poly_add(p, q) == poly_add(q, p)
    assert poly_add(poly_add(p, q), r) == poly_add(p, poly_add(q, r))
    assert poly_add(p, p) == ZERO
    assert poly_add(p, ZERO) == p


@settings(max_examples=2000, deadline=None)
@given(polys)
def test_specialize_composition(p):
    assert specialize(specialize(p, "U"), "V") == specialize(p, "UV")
    assert specialize(specialize(p, "V"), "U") == specialize(p, "UV")


@settings(max_examples=2000, deadline=None)
@given(monos, monos)
def test_mono_mul_commutative_with_identity(a, b):
    assert mono_mul(a, b) == mono_mul(b, a)
    assert mono_mul(a, ONE) == a


@settings(max_examples=1000, deadline=None)
@given(polys, monos)
def test_poly_times_monomial_distributes(p, m):
    assert (p * m).terms == tuple(sorted(mono_mul(t, m) for t in p.terms))
