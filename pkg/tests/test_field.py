from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from wmba.field import QQ, GF, FieldError, field_from_tag

F101 = GF(101)
elems = st.integers(min_value=-500, max_value=500)


@given(elems, elems, elems)
def test_prime_field_axioms(a, b, c):
    x, y, z = F101(a), F101(b), F101(c)
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x - x == F101.zero
    if x:
        assert x * (F101.one / x) == F101.one


@given(elems, elems)
def test_rationals_are_fractions(a, b):
    assert QQ(a) + QQ(b) == Fraction(a + b)


def test_division_by_zero_raises():
    with pytest.raises(ZeroDivisionError):
        F101.one / F101.zero
    with pytest.raises(ZeroDivisionError):
        QQ.parse("1/0")
    with pytest.raises(ZeroDivisionError):
        F101.parse("3/101")


def test_parse_and_format():
    assert QQ.parse("-3/6") == Fraction(-1, 2)
    assert QQ.format(Fraction(-1, 2)) == "-1/2"
    assert F101.parse("1/2") * 2 == F101.one
    with pytest.raises(FieldError):
        QQ.parse("x")


def test_field_tags():
    assert field_from_tag("q") is QQ
    assert field_from_tag("gf:101") is F101
    for bad in ("gf:4", "gf:3", "gf:x", "r"):
        with pytest.raises(FieldError):
            field_from_tag(bad)


def test_fields_do_not_mix():
    with pytest.raises(FieldError):
        F101(1) + GF(7)(1)
