import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unimaginable.comparator import (
    UNRESOLVED,
    compare_expr,
    mega_bounds,
    megiston_bounds,
    sm_bound_certificates,
    tower_lemma_check,
)
from unimaginable.expr import EXACT_EVAL, LOG_COMPARE, SM, STRUCTURAL, Arrow, GenArrow, Lit, Ordering
from unimaginable.grammar import parse_expr
from unimaginable.hyperop import EvalBudget, Exact, evaluate

ORACLE = EvalBudget(max_decimal_digits=20_000)
TINY = EvalBudget(max_decimal_digits=8)

GIANTS = [
    "2^^^3",
    "2^^^4",
    "3^^^3",
    "3^^^4",
    "mega",
    "megiston",
    "256^^257",
    "257^^257",
    "10^^^11",
    "2^16785921",
    "3^10590737",
    "SM[3]^3(5)",
    "expand(3, 4, 2, 2)",
    "4^^5",
]


def value(e):
    r = evaluate(e, ORACLE)
    return r.value if isinstance(r, Exact) else None


def holds(rel, a, b):
    return a < b if rel == "<" else a <= b


def check_exact_certs(chain):
    for c in chain:
        if c.method == EXACT_EVAL and c.verified:
            a, b = value(c.lhs), value(c.rhs)
            assert a is not None and b is not None
            assert holds(c.relation, a, b)
        if c.method == STRUCTURAL:
            assert c.note


small = st.recursive(
    st.integers(0, 6).map(Lit),
    lambda sub: st.one_of(
        st.builds(Arrow, sub, sub, st.integers(-2, 3)),
        st.builds(SM, st.just(3), st.integers(1, 4).map(Lit), st.integers(1, 2)),
        st.builds(GenArrow, sub, st.integers(0, 2).map(Lit), st.integers(1, 2), sub),
    ),
    max_leaves=4,
)


@given(small, small)
@settings(max_examples=300, deadline=None)
def test_consistent_with_exact_values(x, y):
    vx, vy = value(x), value(y)
    if vx is None or vy is None:
        return
    order, chain = compare_expr(x, y, ORACLE)
    assert order is Ordering.of(vx, vy)
    check_exact_certs(chain)


@given(st.integers(2, 40), st.integers(200, 4000), st.integers(2, 40), st.integers(200, 4000))
@settings(max_examples=200, deadline=None)
def test_log_route_agrees_with_integer_route(a, b, c, d):
    x, y = Arrow(Lit(a), Lit(b), 1), Arrow(Lit(c), Lit(d), 1)
    truth = Ordering.of(a**b, c**d)
    order, chain = compare_expr(x, y, TINY)
    if order is UNRESOLVED:
        return
    assert order is truth
    assert all(cert.method != EXACT_EVAL for cert in chain)


def test_log_route_decides_most_power_pairs():
    decided = 0
    for a, b, c, d in itertools.product((2, 3, 5, 7), (300, 1001), (2, 3, 6), (200, 777)):
        order, _ = compare_expr(Arrow(Lit(a), Lit(b), 1), Arrow(Lit(c), Lit(d), 1), TINY)
        decided += order is not UNRESOLVED
    assert decided >= 45


@pytest.mark.parametrize("x,y", list(itertools.combinations(GIANTS, 2)))
def test_antisymmetric(x, y):
    ex, ey = parse_expr(x), parse_expr(y)
    o1, c1 = compare_expr(ex, ey)
    o2, c2 = compare_expr(ey, ex)
    if o1 is UNRESOLVED:
        assert o2 is UNRESOLVED
    else:
        assert o2 is Ordering(-o1)
    check_exact_certs(c1)
    check_exact_certs(c2)


def test_reflexive():
    for g in GIANTS:
        order, chain = compare_expr(parse_expr(g), parse_expr(g))
        assert order is Ordering.EQ


def test_known_orders():
    cases = [
        ("2^^^3", "mega", Ordering.LT),
        ("megiston", "mega", Ordering.GT),
        ("3^^^4", "2^^^4", Ordering.GT),
        ("2^^^5", "3^^^4", Ordering.LT),
        ("256^^257", "mega", Ordering.LT),
        ("mega", "257^^257", Ordering.LT),
        ("2^16785921", "3^10590737", Ordering.LT),
    ]
    for x, y, want in cases:
        order, chain = compare_expr(parse_expr(x), parse_expr(y))
        assert order is want, (x, y)
        assert chain and all(c.verified for c in chain)


def test_close_powers_report_leading_digits():
    _, chain = compare_expr(parse_expr("2^16785921"), parse_expr("3^10590737"))
    assert chain[-1].method == LOG_COMPARE
    assert "5.3191952e5053065" in chain[-1].note
    assert "5.3191955e5053065" in chain[-1].note
    assert "6 significant digits" in chain[-1].note


def test_unresolved_reports_bounds():
    order, bounds = compare_expr(parse_expr("megiston"), parse_expr("10^^^11"))
    assert order is UNRESOLVED
    assert any(c.verified for c in bounds)
    assert any(not c.verified for c in bounds)


COMPOSITION_CASES = list(itertools.product((2, 3), (1, 2, 3), (1, 2, 3), (2, 3)))


@pytest.mark.parametrize("a,b,c,k", COMPOSITION_CASES)
def test_composition_bound(a, b, c, k):
    cert = tower_lemma_check(a, b, c, k)
    assert cert.verified
    assert cert.method in (EXACT_EVAL, LOG_COMPARE, STRUCTURAL)
    assert "composition bound" not in cert.note
    lhs = value(Arrow(Arrow(Lit(a), Lit(b), k), Lit(c), k))
    rhs = value(Arrow(Lit(a), Lit(b + c), k))
    if lhs is not None and rhs is not None:
        assert lhs <= rhs


def test_composition_bound_arguments():
    with pytest.raises(ValueError):
        tower_lemma_check(2, 2, 2, 1)
    with pytest.raises(ValueError):
        tower_lemma_check(0, 2, 2, 2)


def test_triangle_instance():
    lo, up = sm_bound_certificates(2, 2, 2)
    assert lo.method == up.method == EXACT_EVAL
    assert lo.verified and up.verified
    assert (value(lo.lhs), value(lo.rhs), value(up.rhs)) == (16, 256, 256)


@pytest.mark.parametrize("m,n", [(2, 2), (2, 5), (3, 2), (3, 7), (4, 3)])
def test_zero_iterations_are_equalities(m, n):
    for c in sm_bound_certificates(m, n, 0):
        assert c.verified and value(c.lhs) == value(c.rhs) == n


def test_square_upper_bound_fails_at_one():
    lo, up = sm_bound_certificates(3, 2, 1)
    assert lo.verified
    assert not up.verified
    assert value(up.lhs) == 256 and value(up.rhs) == 16


def test_polygon_degree_one_rejected():
    with pytest.raises(ValueError):
        sm_bound_certificates(1, 3, 2)


def test_mega_chain():
    certs = mega_bounds()
    assert len(certs) == 3
    assert all(c.verified for c in certs)
    assert certs[0].lhs == Arrow(Lit(256), Lit(257), 2)
    assert certs[-1].rhs == Arrow(Lit(257), Lit(257), 2)


def test_megiston_chain():
    certs = megiston_bounds()
    assert certs[0].verified and certs[0].lhs == Arrow(Lit(10), Lit(11), 3)
    assert certs[-1].rhs == Arrow(Lit(11), Lit(11), 3)
    assert not all(c.verified for c in certs)


def test_records():
    lo, _ = sm_bound_certificates(2, 2, 2)
    assert lo.to_record() == "CERT\t<=\t2^^3\tSM[3]^2(2)\texact-eval\ttrue"
