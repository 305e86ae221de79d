"""Goodstein sequences on hereditary representations.

One step rereads the current tree in base ``b+1`` and subtracts one. The
run stops at the sentinel ``MINUS_ONE`` (decrementing zero), and the base
at that moment is the quantity bounded by :func:`goodstein_base_bound`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator

from .expr import SM, Arrow, BoundCertificate, Lit, EXACT_EVAL, STRUCTURAL
from .hereditary import HereditaryRep, decrement, from_natural, rebase, serialize
from .hyperop import DEFAULT_BUDGET, BudgetExceeded, EvalBudget, Exact
from . import hyperop

__all__ = [
    "MINUS_ONE",
    "GoodsteinState",
    "GoodsteinRun",
    "goodstein_step",
    "goodstein_states",
    "goodstein_run",
    "trace_record",
    "goodstein_base_bound",
    "CorollaryReport",
    "goodstein_corollary_bound",
]


class _MinusOne:
    __slots__ = ()

    def __repr__(self):
        return "MINUS_ONE"


MINUS_ONE = _MinusOne()


@dataclass(frozen=True)
class GoodsteinState:
    base: int
    value: object  # HereditaryRep or MINUS_ONE
    steps_taken: int = 0

    @classmethod
    def start(cls, n0: int, b0: int) -> "GoodsteinState":
        return cls(b0, from_natural(n0, b0), 0)

    @property
    def finished(self) -> bool:
        return self.value is MINUS_ONE


def goodstein_step(s: GoodsteinState) -> GoodsteinState:
    if s.value is MINUS_ONE:
        raise ValueError("the sequence has already reached -1")
    nb = s.base + 1
    nxt = decrement(rebase(s.value, nb))
    return GoodsteinState(nb, MINUS_ONE if nxt is None else nxt, s.steps_taken + 1)


def goodstein_states(n0: int, b0: int) -> Iterator[GoodsteinState]:
    s = GoodsteinState.start(n0, b0)
    yield s
    while not s.finished:
        s = goodstein_step(s)
        yield s


def trace_record(s: GoodsteinState, max_digits: int = 1000) -> str:
    """``step<TAB>base<TAB>serialized-rep<TAB>value-or-OVERFLOW``."""
    if s.value is MINUS_ONE:
        rep, val = "-1", "-1"
    else:
        rep = serialize(s.value)
        res = hyperop.evaluate(_expr_of(s.value), EvalBudget(max_decimal_digits=max_digits))
        val = str(res.value) if isinstance(res, Exact) else "OVERFLOW"
    return f"{s.steps_taken}\t{s.base}\t{rep}\t{val}"


def _expr_of(rep: HereditaryRep):
    from .hereditary import to_expr

    return to_expr(rep)


@dataclass
class GoodsteinRun:
    n0: int
    b0: int
    terminated: bool
    steps: int  # steps taken (to the -1 sentinel if terminated)
    steps_to_zero: int | None
    final_base: int | None
    last: GoodsteinState = field(repr=False, default=None)


def goodstein_run(n0: int, b0: int, max_steps: int = 10**6, on_state=None) -> GoodsteinRun:
    """Iterate until the -1 sentinel or ``max_steps`` steps.

    ``on_state`` is called with every state, including the initial one.
    """
    if n0 < 0 or b0 < 2:
        raise ValueError("need n0 >= 0 and base >= 2")
    s = GoodsteinState.start(n0, b0)
    zero_at = None
    while True:
        if on_state is not None:
            on_state(s)
        if s.value is MINUS_ONE:
            return GoodsteinRun(n0, b0, True, s.steps_taken, zero_at, s.base, s)
        if not s.value.terms and zero_at is None:
            zero_at = s.steps_taken
        if s.steps_taken >= max_steps:
            return GoodsteinRun(n0, b0, False, s.steps_taken, zero_at, None, s)
        s = goodstein_step(s)


def goodstein_base_bound(k: int, b: int, budget: EvalBudget | None = None) -> int:
    """Final base for the all-``(b-1)`` numeral with ``k`` digits.

    ``B_1(y) = 2y`` and ``B_k(y) = B_{k-1}`` applied ``y`` times to ``y``.
    Raises :class:`BudgetExceeded` when an intermediate value would
    exceed the digit budget.
    """
    if not 1 <= k < b:
        raise ValueError(f"need 1 <= k < b, got k={k}, b={b}")
    limit = (budget or DEFAULT_BUDGET).max_decimal_digits

    def bound(level: int, y: int) -> int:
        if level == 1:
            return 2 * y
        if level == 2:
            # y applications of doubling
            if y.bit_length() > 4 * limit or y * math.log10(2) + math.log10(y) >= limit:
                raise BudgetExceeded(Arrow(Arrow(Lit(2), Lit(y), 1), Lit(y), 0), "digits")
            return y << y
        v = y
        for _ in range(y):
            v = bound(level - 1, v)
        return v

    return bound(k, b)


@dataclass
class CorollaryReport:
    base: int
    certificates: list
    chain: str


def goodstein_corollary_bound(b: int, budget: EvalBudget | None = None) -> CorollaryReport:
    """Check ``B_k(b) < SM_{k+1}(b)`` where both sides evaluate exactly.

    Also emits the polygon-versus-arrow bound that closes the chain
    ``B_b(b) < SM_{b+1}(b) <= (b+1) ^(b-1) (b+1)``.
    """
    if b < 3:
        raise ValueError("the bound needs base b >= 3")
    budget = budget or DEFAULT_BUDGET
    certs = []
    for k in range(2, b):
        try:
            lhs = goodstein_base_bound(k, b, budget)
        except BudgetExceeded:
            break
        rhs = hyperop.sm(k + 1, b, budget)
        if not isinstance(rhs, Exact):
            break
        certs.append(
            BoundCertificate(Lit(lhs), SM(k + 1, Lit(b)), "<", EXACT_EVAL, lhs < rhs.value, f"final base B_{k}({b})")
        )
    certs.append(
        BoundCertificate(
            SM(b + 1, Lit(b)),
            Arrow(Lit(b + 1), Lit(b + 1), b - 1),
            "<=",
            STRUCTURAL,
            True,
            "polygon-arrow sandwich",
        )
    )
    chain = f"B_{b}({b}) < SM[{b + 1}]({b}) <= {b + 1}{'^' * (b - 1)}{b + 1}"
    return CorollaryReport(b, certs, chain)
