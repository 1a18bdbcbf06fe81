from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from blgroups.exact import ExactValue, exact_max

rationals = st.fractions(
    min_value=Fraction(1, 200), max_value=Fraction(500), max_denominator=200
)


def test_from_rational_examples():
    assert ExactValue.from_rational(1).is_one
    assert ExactValue.from_rational(12).factors == ((2, Fraction(2)), (3, Fraction(1)))
    assert ExactValue.from_rational(Fraction(1, 2)).factors == ((2, Fraction(-1)),)
    with pytest.raises(ValueError):
        ExactValue.from_rational(0)
    with pytest.raises(ValueError):
        ExactValue.from_rational(-3)


def test_as_fraction_round_trip():
    v = ExactValue.from_rational(Fraction(45, 8))
    assert v.as_fraction() == Fraction(45, 8)
    assert (v ** Fraction(1, 2)).as_fraction() is None


@given(rationals, rationals)
def test_multiplication_matches_rationals(a, b):
    lhs = ExactValue.from_rational(a) * ExactValue.from_rational(b)
    assert lhs.as_fraction() == a * b


@given(rationals, rationals)
def test_division_matches_rationals(a, b):
    lhs = ExactValue.from_rational(a) / ExactValue.from_rational(b)
    assert lhs.as_fraction() == a / b


@given(rationals, st.fractions(min_value=-3, max_value=3, max_denominator=6))
def test_power_law(a, r):
    v = ExactValue.from_rational(a) ** r
    assert (v ** 2).compare(ExactValue.from_rational(a) ** (2 * r)) == 0


def test_compare_identical_maps():
    a = ExactValue.from_rational(2) ** Fraction(1, 2)
    b = ExactValue.from_rational(2) ** Fraction(1, 2)
    assert a.compare(b) == 0


def test_compare_two_vs_sqrt_three():
    two = ExactValue.from_rational(2)
    sqrt3 = ExactValue.from_rational(3) ** Fraction(1, 2)
    assert two.compare(sqrt3) == 1
    assert sqrt3 < two


def test_insertion_order_is_canonical():
    a = ExactValue.from_rational(2) ** Fraction(1, 3) * ExactValue.from_rational(3) ** Fraction(1, 2)
    b = ExactValue.from_rational(3) ** Fraction(1, 2) * ExactValue.from_rational(2) ** Fraction(1, 3)
    assert a == b
    assert a.compare(b) == 0


@given(rationals, rationals)
def test_compare_agrees_with_rationals(a, b):
    cmp = ExactValue.from_rational(a).compare(ExactValue.from_rational(b))
    assert cmp == (a > b) - (a < b)


def test_close_values_separate():
    # 2^1000001 vs 2^1000000 * 2: equal; and a genuinely tiny gap
    a = ExactValue.from_rational(2) ** Fraction(10**12 + 1, 10**12)
    b = ExactValue.from_rational(2)
    assert a.compare(b) == 1


def test_exact_max_reports_ties():
    vals = [
        ExactValue.from_rational(2),
        ExactValue.from_rational(4) ** Fraction(1, 2),
        ExactValue.from_rational(3),
    ]
    idx, best, tie = exact_max(vals)
    assert idx == 2 and best.as_fraction() == 3 and not tie
    idx, best, tie = exact_max(vals[:2])
    assert idx == 0 and tie


def test_json_round_trip():
    v = ExactValue.from_rational(Fraction(8, 3)) ** Fraction(-1, 2)
    assert ExactValue.from_json(v.to_json()) == v
