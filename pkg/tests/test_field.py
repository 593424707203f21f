from __future__ import annotations

import pickle
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from kronquad.field import GF, QQ, field_from_spec, field_of, sqrt_if_square
from strategies import field_and, scalars


def test_rationals_lowest_terms():
    s = QQ(Fraction(6, -4))
    assert (s.numerator, s.denominator) == (-3, 2)


def test_fp_residue_range():
    F = GF(7)
    assert F(-1).v == 6
    assert F(15).v == 1
    assert F(3) * F(5) == F(1)


def test_sqrt_examples():
    assert sqrt_if_square(QQ(4)) == 2
    assert sqrt_if_square(QQ(2)) is None
    assert sqrt_if_square(QQ(Fraction(9, 4))) == Fraction(3, 2)
    assert sqrt_if_square(QQ(-1)) is None
    # squares mod 7 are {1, 2, 4}; 3^2 = 4^2 = 2 and the canonical root is the smaller
    assert sqrt_if_square(GF(7)(2)) == GF(7)(3)
    assert sqrt_if_square(GF(7)(3)) is None


def test_division_by_zero_is_an_error():
    with pytest.raises(ZeroDivisionError):
        GF(7)(3) / GF(7)(0)
    with pytest.raises(ZeroDivisionError):
        QQ(1) / QQ(0)


def test_field_specs():
    assert field_from_spec("rational") is QQ
    assert field_from_spec("fp:1009") == GF(1009)
    for bad in ("fp:1007", "fp:2", "fp:x", "reals"):
        with pytest.raises(ValueError):
            field_from_spec(bad)


def test_parse_and_field_of():
    F = GF(11)
    assert F.parse("1/2") * 2 == 1
    assert QQ.parse("-3/6") == Fraction(-1, 2)
    assert field_of(F(3)) == F
    assert field_of(Fraction(1, 2)) is QQ
    with pytest.raises(ValueError):
        QQ.parse(True)


def test_pickle_residue():
    x = GF(1009)(17)
    assert pickle.loads(pickle.dumps(x)) == x


def test_nonresidue_is_smallest():
    F = GF(1009)
    n = F.nonresidue
    assert not F.is_square(n)
    assert all(F.is_square(F(k)) for k in range(1, int(n)))


@given(field_and(scalars, scalars, scalars))
def test_field_axioms(data):
    _, a, b, c = data
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    if a:
        assert a * (1 / a) == 1


@given(field_and(scalars))
def test_sqrt_squares_back(data):
    field, s = data
    r = field.sqrt(s)
    if r is not None:
        assert r * r == s
    assert field.sqrt(s * s) is not None


@given(st.integers(0, 1008))
def test_fp_sqrt_canonical(v):
    F = GF(1009)
    r = F.sqrt(F(v))
    if r is not None:
        assert r.v <= 504
