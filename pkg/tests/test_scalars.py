from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pentagon.errors import ConductorMismatch, DivisionByZero, NotADivisor
from pentagon.scalars import (Cyc, as_nonnegative_rational, cyclotomic_poly, field_arith, from_json,
                              lift_conductor, positivity_status, reduce_conductor, render, to_json,
                              totient)

z3 = Cyc.root(3)
z4 = Cyc.root(4)


def test_root_relations():
    assert field_arith(z3, z3 ** 2, "add") == -1
    assert field_arith(z4, z4, "mul") == -1
    assert field_arith(Cyc.one(3), 1 + z3, "div") == -z3
    assert (1 + z3) * (-z3) == 1


def test_cyclotomic_polynomials():
    # coefficient lists, constant term first
    assert list(cyclotomic_poly(1)) == [-1, 1]
    assert list(cyclotomic_poly(3)) == [1, 1, 1]
    assert list(cyclotomic_poly(4)) == [1, 0, 1]
    assert list(cyclotomic_poly(6)) == [1, -1, 1]
    assert [totient(m) for m in (1, 2, 3, 4, 5, 6, 8, 12)] == [1, 1, 2, 2, 4, 2, 4, 4]


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        field_arith(z3, Cyc.zero(3), "div")
    with pytest.raises(DivisionByZero):
        (1 + z3 + z3 ** 2).inverse()


def test_conductor_mismatch():
    with pytest.raises(ConductorMismatch):
        field_arith(z3, z4, "add")
    with pytest.raises(ConductorMismatch):
        z3 + z4


def test_lift_and_reduce():
    a = lift_conductor(z3, 6)
    assert a.m == 6
    assert a == Cyc.root(6, 2)
    assert a.coeffs == (Fraction(-1), Fraction(1))
    assert reduce_conductor(a, 3) == z3
    with pytest.raises(NotADivisor):
        lift_conductor(z3, 4)
    assert lift_conductor(Cyc.root(4), 12) ** 2 == -1


def test_rationals_mix_with_any_conductor():
    half = Cyc.rational(Fraction(1, 2))
    assert (half + z3).m == 3
    assert half * 2 == 1
    assert Cyc.rational(3, 5) == 3


def test_positivity():
    assert as_nonnegative_rational(Cyc.rational(Fraction(2, 3), 4)) == Fraction(2, 3)
    assert as_nonnegative_rational(Cyc.rational(-1)) is None
    assert positivity_status(Cyc.rational(-1)) == "negative"
    assert positivity_status(z3) == "irrational"
    assert as_nonnegative_rational(z4) is None


def test_render_and_json():
    assert render(Cyc.rational(Fraction(-3, 2))) == "-3/2"
    assert render(Cyc.zero(5)) == "0"
    assert "z" in render(z3)
    obj = to_json(z3 / 7)
    assert obj == {"m": 3, "c": [["0", "1"], ["1", "7"]]}
    assert from_json(obj) == z3 / 7
    assert from_json("5/3") == Fraction(5, 3)
    assert from_json(2, m=4).m == 4


coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4)
conductors = st.sampled_from([1, 2, 3, 4, 5, 6, 8, 12])


@st.composite
def cyc(draw, m=None):
    m = m or draw(conductors)
    return Cyc.from_fractions(m, [draw(coeff) for _ in range(totient(m))])


@st.composite
def cyc_triple(draw):
    m = draw(conductors)
    return draw(cyc(m)), draw(cyc(m)), draw(cyc(m))


@settings(max_examples=60, deadline=None)
@given(cyc_triple())
def test_field_axioms(t):
    a, b, c = t
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    if b:
        assert (a / b) * b == a
        assert b * b.inverse() == 1


@settings(max_examples=60, deadline=None)
@given(cyc(), st.sampled_from([1, 2, 3, 5]))
def test_lift_reduce_round_trip(a, k):
    b = lift_conductor(a, a.m * k)
    assert reduce_conductor(b, a.m) == a
    # equality is coefficient-wise inside one conductor
    assert b == lift_conductor(a, b.m)
    if not a.is_rational():
        assert b != a or k == 1


@settings(max_examples=40, deadline=None)
@given(cyc())
def test_json_round_trip(a):
    assert from_json(to_json(a)) == a
