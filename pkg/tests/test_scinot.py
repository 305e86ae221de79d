import sys
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unimaginable.comparator.scinot import (
    PrecisionExhausted,
    SciNotation,
    digit_count,
    rounded_agreement,
    sci_notation,
)

if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)


def oracle_digits(base, exponent, k):
    s = str(base**exponent)
    return s[: k + 1].ljust(k + 1, "0"), len(s) - 1


def test_headline_pair():
    a = sci_notation(2, 16785921, 7)
    b = sci_notation(3, 10590737, 7)
    assert str(a) == "5.3191952e5053065 (±7 certified)"
    assert str(b) == "5.3191955e5053065 (±7 certified)"
    assert rounded_agreement(a, b) == 6


def test_small_exact():
    s = sci_notation(2, 10, 4)
    assert str(s) == "1.0240e3 (±4 certified)"
    assert s.error_bound == 0
    assert s.mantissa == Fraction(1024, 1000)


def test_powers_of_ten():
    s = sci_notation(10, 10**9, 5)
    assert (s.mantissa_digits, s.exponent10) == ("100000", 10**9)
    assert digit_count(10, 10**9) == 10**9 + 1
    assert digit_count(1000, 7) == 22


@pytest.mark.parametrize("base,exponent", [(7, 100), (7, 500), (3, 9000), (12, 5000), (2, 20000)])
def test_against_exact_power(base, exponent):
    s = sci_notation(base, exponent, 20)
    digits, e10 = oracle_digits(base, exponent, 20)
    assert (s.mantissa_digits, s.exponent10) == (digits, e10)
    assert digit_count(base, exponent) == len(str(base**exponent))


def test_tetration_digit_count():
    assert digit_count(3, 7625597484987) == 3638334640025
    assert digit_count(2, 10) == 4
    assert digit_count(5, 0) == 1


@given(st.integers(2, 50), st.integers(5000, 40000), st.integers(1, 30))
@settings(max_examples=60, deadline=None)
def test_interval_path_matches_oracle(base, exponent, k):
    s = sci_notation(base, exponent, k)
    digits, e10 = oracle_digits(base, exponent, k)
    assert (s.mantissa_digits, s.exponent10) == (digits, e10)


@given(st.integers(2, 1000), st.integers(10**6, 10**12), st.integers(1, 25))
@settings(max_examples=60, deadline=None)
def test_stable_under_precision_doubling(base, exponent, k):
    s = sci_notation(base, exponent, k)
    bits = max(64, exponent.bit_length() + 4 * k + 40)
    t = sci_notation(base, exponent, k, start_bits=2 * bits)
    u = sci_notation(base, exponent, k, start_bits=4 * bits)
    assert s == t == u


def test_precision_cap():
    with pytest.raises(PrecisionExhausted) as info:
        sci_notation(2, 16785921, 40, precision=40)
    assert info.value.required_bits > 40


def test_argument_checks():
    for args in ((1, 5, 3), (2, -1, 3), (2, 5, 0)):
        with pytest.raises(ValueError):
            sci_notation(*args)
    with pytest.raises(ValueError):
        digit_count(0, 3)
    with pytest.raises(ValueError):
        SciNotation("0123", 1, 2, Fraction(0))


def test_rounded_agreement_edges():
    a = SciNotation("12344", 3, 4, Fraction(0))
    b = SciNotation("12349", 3, 4, Fraction(0))
    c = SciNotation("12344", 4, 4, Fraction(0))
    assert rounded_agreement(a, b) == 3
    assert rounded_agreement(SciNotation("12345", 3, 4, Fraction(0)), b) == 4
    assert rounded_agreement(a, c) == 0
    assert rounded_agreement(a, a) == 4


def test_huge_exponents():
    assert sci_notation(10, 10**400, 3).mantissa_digits == "1000"
    assert digit_count(1000, 10**400) == 3 * 10**400 + 1
    s = sci_notation(7, 10**400, 5)
    assert s.exponent10 + 1 == digit_count(7, 10**400)
