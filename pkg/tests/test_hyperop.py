import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unimaginable.expr import SM, Arrow, GenArrow, Lit
from unimaginable.hyperop import (
    BudgetExceeded,
    EvalBudget,
    Exact,
    Overflow,
    arrow,
    evaluate,
    exact_or_raise,
    gen_arrow,
    goodstein_g,
    powerset_card,
    sm,
)

SMALL = EvalBudget(max_decimal_digits=2000, max_expansions=100_000)


def oracle_arrow(a, b, k):
    """Plain recursion, only for tiny arguments."""
    if k == -2:
        return max(a, b) + 1
    if k == -1:
        return a + b
    if k == 0:
        return a * b
    if k == 1:
        return a**b
    if b == 0:
        return 1
    return oracle_arrow(a, oracle_arrow(a, b - 1, k), k - 1)


def test_pentation_of_two():
    assert arrow(2, 3, 3) == Exact(65536)


def test_trivial_identities():
    assert arrow(1, 9, 5) == Exact(1)
    assert arrow(7, 1, 9) == Exact(7)
    assert arrow(2, 2, 6) == Exact(4)


def test_low_levels():
    assert arrow(5, 7, -1) == Exact(12)
    assert arrow(5, 7, -2) == Exact(8)
    assert arrow(3, 3, 1) == Exact(27)


def test_tetration_overflow_keeps_a_power():
    r = arrow(3, 4, 2)
    assert isinstance(r, Overflow)
    assert r.residual == Arrow(Lit(3), Lit(7625597484987), 1)


def test_minus_one_height():
    assert arrow(5, -1, 3) == Exact(0)
    with pytest.raises(ValueError):
        arrow(5, -1, 1)


def test_bad_arguments():
    with pytest.raises(ValueError):
        arrow(-1, 2, 2)
    with pytest.raises(ValueError):
        arrow(2, 2, -3)
    with pytest.raises(ValueError):
        sm(2, 3)
    with pytest.raises(ValueError):
        gen_arrow(2, 2, 0, 2)


def test_gen_arrow_examples():
    assert gen_arrow(2, 2, 2, 2) == Exact(16)
    assert gen_arrow(2, 0, 2, 7) == Exact(7)
    r = gen_arrow(2, 3, 2, 5)
    assert isinstance(r, Overflow)
    assert r.residual == Arrow(Lit(2), Lit(2 ** (2**5)), 1)


def test_polygons():
    assert sm(3, 2) == Exact(4)
    assert sm(3, 4) == Exact(256)
    assert sm(4, 2) == Exact(256)
    r = sm(5, 2)
    assert isinstance(r, Overflow)
    assert r.residual == SM(3, Lit(256), 256)


def test_powerset():
    assert powerset_card(1, 3) == Exact(8)
    assert powerset_card(2, 2) == Exact(16)
    for k in range(1, 6):
        assert powerset_card(k, 0) == arrow(2, k - 1, 2)


def test_exact_or_raise():
    assert exact_or_raise(Arrow(Lit(2), Lit(10), 1)) == 1024
    with pytest.raises(BudgetExceeded) as info:
        exact_or_raise(Arrow(Lit(3), Lit(4), 2))
    assert info.value.reason == "digits"


def test_expansion_budget():
    r = evaluate(Arrow(Lit(2), Lit(4), 3), EvalBudget(max_decimal_digits=10**6, max_expansions=5))
    assert isinstance(r, Overflow)


@pytest.mark.parametrize("k", range(1, 9))
def test_trivial_tower_identities(k):
    for x in range(21):
        assert arrow(1, x, k) == Exact(1)
        assert arrow(x, 0, k) == Exact(1)
        assert arrow(x, 1, k) == Exact(x)
    assert arrow(2, 2, k) == Exact(4)


@given(st.integers(2, 6), st.integers(2, 4), st.integers(1, 4))
@settings(max_examples=200, deadline=None)
def test_recurrence_law(a, b, k):
    whole = arrow(a, b, k, SMALL)
    inner = arrow(a, b - 1, k, SMALL)
    if not (isinstance(whole, Exact) and isinstance(inner, Exact)):
        return
    assert whole == arrow(a, inner.value, k - 1, SMALL)


@given(st.integers(0, 5), st.integers(0, 4), st.integers(-2, 3))
@settings(max_examples=200, deadline=None)
def test_against_recursion_oracle(a, b, k):
    r = arrow(a, b, k, SMALL)
    if isinstance(r, Exact):
        assert r.value == oracle_arrow(a, b, k)


@given(st.integers(0, 30), st.integers(0, 30))
def test_goodstein_alias(a, b):
    assert goodstein_g(2, a, b) == Exact(a * b)
    assert goodstein_g(3, a, b) == Exact(a**b)


@given(st.integers(1, 5), st.integers(0, 4), st.integers(1, 4))
@settings(max_examples=200, deadline=None)
def test_gen_arrow_generalizes(a, b, k):
    g, r = gen_arrow(a, b, k, 1, SMALL), arrow(a, b, k, SMALL)
    if isinstance(g, Exact) and isinstance(r, Exact):
        assert g == r


@pytest.mark.parametrize(
    "expr",
    [
        Arrow(Lit(2), Lit(5), 2),
        Arrow(Lit(3), Lit(3), 2),
        Arrow(Lit(2), Lit(4), 3),
        GenArrow(Lit(2), Lit(3), 2, Lit(5)),
        SM(3, Lit(5), 3),
        Arrow(Lit(7), Lit(2000), 1),
    ],
)
@pytest.mark.parametrize("digits", [5, 50, 500, 5000])
def test_residuals_are_value_faithful(expr, digits):
    big = EvalBudget(max_decimal_digits=200_000)
    full = evaluate(expr, big)
    r = evaluate(expr, EvalBudget(max_decimal_digits=digits))
    if isinstance(r, Overflow):
        assert evaluate(r.residual, big) == full
    else:
        assert r == full


def test_polygons_monotone():
    vals = {}
    for p in (3, 4):
        for n in range(1, 5):
            r = sm(p, n, SMALL)
            if isinstance(r, Exact):
                vals[p, n] = r.value
    for (p, n), v in vals.items():
        if (p, n + 1) in vals:
            assert vals[p, n + 1] > v
        if (p + 1, n) in vals and n >= 2:
            assert vals[p + 1, n] > v


def test_huge_exponent_is_an_overflow_not_a_crash():
    e = Arrow(GenArrow(Lit(6), Lit(2), 1, Lit(4)), Lit(2), 3)
    assert isinstance(evaluate(e), Overflow)
    assert isinstance(arrow(2, 10**400, 1), Overflow)
