"""Budget-limited exact evaluation of hyperoperations.

``arrow(A, B, k)`` follows the recursion

    arrow(A, B, 0)   = A*B
    arrow(A, 0, k)   = 1                       (k >= 1)
    arrow(A, B+1, k) = arrow(A, arrow(A, B, k), k-1)

extended downwards with ``arrow(A, B, -1) = A+B``, ``arrow(A, B, -2) =
max(A, B)+1`` and ``arrow(A, -1, k) = 0`` for ``k >= 2``.

Every evaluation runs against an :class:`EvalBudget`. When the budget is
exhausted the result is an :class:`Overflow` whose ``residual`` is an
expression with exactly the same value as the request, advanced as far
as the small intermediate values allow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .expr import SM, Arrow, ArrowExpr, GenArrow, Lit

__all__ = [
    "EvalBudget",
    "DEFAULT_BUDGET",
    "Exact",
    "Overflow",
    "EvalResult",
    "BudgetExceeded",
    "arrow",
    "goodstein_g",
    "gen_arrow",
    "sm",
    "powerset_card",
    "evaluate",
    "exact_or_raise",
]

# intermediate values up to this many digits are folded into residuals
FOLD_DIGITS = 20

_LOG10_2 = math.log10(2)


@dataclass(frozen=True)
class EvalBudget:
    max_decimal_digits: int = 100_000
    max_expansions: int = 1_000_000

    def __post_init__(self):
        if self.max_decimal_digits <= 0 or self.max_expansions <= 0:
            raise ValueError("budget limits must be strictly positive")


DEFAULT_BUDGET = EvalBudget()


@dataclass(frozen=True)
class Exact:
    value: int

    is_exact = True


@dataclass(frozen=True)
class Overflow:
    residual: ArrowExpr
    reason: str  # "digits" or "expansions"

    is_exact = False


EvalResult = Union[Exact, Overflow]


class BudgetExceeded(ArithmeticError):
    """Raised by the ``*_or_raise`` helpers when a budget is exhausted."""

    def __init__(self, residual: ArrowExpr, reason: str):
        self.residual = residual
        self.reason = reason
        super().__init__(f"evaluation budget exceeded ({reason})")


class _Stop(Exception):
    def __init__(self, residual, reason):
        self.residual = residual
        self.reason = reason


def _small(v: int) -> bool:
    return v.bit_length() * _LOG10_2 < FOLD_DIGITS - 1


def _digits_estimate(n: int) -> float:
    return n.bit_length() * _LOG10_2


class _Evaluator:
    def __init__(self, budget: EvalBudget):
        self.budget = budget
        self.expansions = 0

    def tick(self, residual_fn):
        self.expansions += 1
        if self.expansions > self.budget.max_expansions:
            raise _Stop(residual_fn(), "expansions")

    # -- primitive levels -------------------------------------------------

    def power(self, a: int, b: int) -> int:
        if b == 0:
            return 1
        if a < 2:
            return a
        limit = self.budget.max_decimal_digits
        if b.bit_length() > 1000 or b * math.log10(a) >= limit:
            raise _Stop(Arrow(Lit(a), Lit(b), 1), "digits")
        return a**b

    def arrow(self, a: int, b: int, k: int) -> int:
        self.tick(lambda: Arrow(Lit(a), Lit(b), k))
        if k == -2:
            return max(a, b) + 1
        if k == -1:
            return a + b
        if k == 0:
            if _digits_estimate(a) + _digits_estimate(b) >= self.budget.max_decimal_digits + 1:
                raise _Stop(Arrow(Lit(a), Lit(b), 0), "digits")
            return a * b
        if b == -1:
            return 0
        # trivial towers
        if b == 0 or a == 1:
            return 1
        if b == 1:
            return a
        if a == 2 and b == 2:
            return 4
        if a == 0:
            if k == 1:
                return 0
            # 0, 0^0 = 1, 0^1 = 0, ... at every level >= 2
            return 1 if b % 2 == 0 else 0
        if k == 1:
            return self.power(a, b)
        return self._iterate(
            a,
            k - 1,
            start=a,
            count=b - 1,
            inner=lambda v: self.arrow(a, v, k - 1),
            residual=lambda remaining, v: (
                Arrow(Lit(a), Lit(b), k) if remaining == b - 1 else GenArrow(Lit(a), Lit(remaining), k, Lit(v))
            ),
        )

    def _iterate(self, a, level, start, count, inner, residual):
        """Apply ``inner`` ``count`` times to ``start``.

        On budget failure, rebuild a value-equal residual from the last
        state whose value was small enough to fold.
        """
        v = start
        # the starting value is an input, so it is always safe to keep
        small_state = (count, v)
        done = 0
        while done < count:
            try:
                v = inner(v)
            except _Stop as stop:
                r_s, v_s = small_state
                if r_s == count - done == 1:
                    # last application on a folded value: keep the inner detail
                    raise
                raise _Stop(residual(r_s, v_s), stop.reason) from None
            done += 1
            if _small(v):
                small_state = (count - done, v)
        return v

    def gen_arrow(self, a: int, b: int, k: int, c: int) -> int:
        self.tick(lambda: GenArrow(Lit(a), Lit(b), k, Lit(c)))
        if b == 0:
            return c
        return self._iterate(
            a,
            k - 1,
            start=c,
            count=b,
            inner=lambda v: self.arrow(a, v, k - 1),
            residual=lambda remaining, v: (
                Arrow(Lit(a), Lit(v), k - 1) if remaining == 1 else GenArrow(Lit(a), Lit(remaining), k, Lit(v))
            ),
        )

    def sm(self, p: int, n: int, times: int = 1) -> int:
        self.tick(lambda: SM(p, Lit(n), times))
        if times == 0:
            return n
        if times > 1:
            return self._iterate(
                n,
                p,
                start=n,
                count=times,
                inner=lambda v: self.sm(p, v),
                residual=lambda remaining, v: SM(p, Lit(v), remaining),
            )
        if p == 3:
            try:
                return self.power(n, n)
            except _Stop as stop:
                raise _Stop(SM(3, Lit(n)), stop.reason) from None
        return self._iterate(
            n,
            p - 1,
            start=n,
            count=n,
            inner=lambda v: self.sm(p - 1, v),
            residual=lambda remaining, v: SM(p - 1, Lit(v), remaining),
        )

    # -- expression trees -------------------------------------------------

    def fold(self, orig: ArrowExpr, value: int) -> ArrowExpr:
        return Lit(value) if _small(value) else orig

    def partial(self, e: ArrowExpr) -> ArrowExpr:
        """Best-effort folded form of ``e``, used when building residuals."""
        try:
            return self.fold(e, _Evaluator(self.budget).expr(e))
        except _Stop as stop:
            return stop.residual

    def expr(self, e: ArrowExpr) -> int:
        if isinstance(e, Lit):
            return e.value
        if isinstance(e, Arrow):
            try:
                av = self.expr(e.a)
            except _Stop as stop:
                raise _Stop(Arrow(stop.residual, self.partial(e.b), e.k), stop.reason) from None
            if e.k >= 1 and av == 1:
                return 1
            try:
                bv = self.expr(e.b)
            except _Stop as stop:
                raise _Stop(Arrow(self.fold(e.a, av), stop.residual, e.k), stop.reason) from None
            return self.arrow(av, bv, e.k)
        if isinstance(e, GenArrow):
            parts = []
            for sub in (e.a, e.b, e.c):
                try:
                    parts.append(self.expr(sub))
                except _Stop as stop:
                    args = [self.fold(s, v) for s, v in zip((e.a, e.b, e.c), parts)]
                    args.append(stop.residual)
                    args += [self.partial(s) for s in (e.a, e.b, e.c)[len(args):]]
                    raise _Stop(GenArrow(args[0], args[1], e.k, args[2]), stop.reason) from None
            return self.gen_arrow(parts[0], parts[1], e.k, parts[2])
        if isinstance(e, SM):
            try:
                nv = self.expr(e.n)
            except _Stop as stop:
                raise _Stop(SM(e.polygon, stop.residual, e.times), stop.reason) from None
            if nv < 1:
                raise ValueError("Steinhaus-Moser argument must be >= 1")
            return self.sm(e.polygon, nv, e.times)
        raise TypeError(f"not an expression: {e!r}")


def _run(fn, budget) -> EvalResult:
    ev = _Evaluator(budget or DEFAULT_BUDGET)
    try:
        return Exact(fn(ev))
    except _Stop as stop:
        return Overflow(stop.residual, stop.reason)


def _check_natural(name, x):
    if not isinstance(x, int) or x < 0:
        raise ValueError(f"{name} must be a natural number, got {x!r}")


def arrow(a: int, b: int, k: int, budget: EvalBudget | None = None) -> EvalResult:
    """Evaluate ``a ^(k) b``; ``b = -1`` is accepted only for ``k >= 2``."""
    _check_natural("A", a)
    if k < -2:
        raise ValueError(f"arrow level must be >= -2, got {k}")
    if b == -1:
        if k < 2:
            raise ValueError("B = -1 is defined only for levels k >= 2")
        return Exact(0)
    _check_natural("B", b)
    return _run(lambda ev: ev.arrow(a, b, k), budget)


def goodstein_g(k: int, a: int, b: int, budget: EvalBudget | None = None) -> EvalResult:
    """Goodstein's indexing, shifted by two levels."""
    return arrow(a, b, k - 2, budget)


def gen_arrow(a: int, b: int, k: int, c: int, budget: EvalBudget | None = None) -> EvalResult:
    """``b`` right-nested applications of ``a ^(k-1) .`` to ``c``."""
    for name, x in (("A", a), ("B", b), ("C", c)):
        _check_natural(name, x)
    if k < 1:
        raise ValueError(f"generalized arrow level must be >= 1, got {k}")
    return _run(lambda ev: ev.gen_arrow(a, b, k, c), budget)


def sm(polygon: int, n: int, budget: EvalBudget | None = None) -> EvalResult:
    """Steinhaus-Moser: ``SM_3(n) = n^n``, ``SM_{p+1}(n) = SM_p^n(n)``."""
    if polygon < 3:
        raise ValueError(f"polygon must have at least 3 sides, got {polygon}")
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"Steinhaus-Moser argument must be >= 1, got {n!r}")
    return _run(lambda ev: ev.sm(polygon, n), budget)


def powerset_card(k: int, base_card: int, budget: EvalBudget | None = None) -> EvalResult:
    """Size of the ``k``-fold iterated power set of a ``base_card``-element set."""
    _check_natural("k", k)
    _check_natural("base_card", base_card)
    # a tower of k twos topped by base_card
    return gen_arrow(2, k, 2, base_card, budget)


def evaluate(e: ArrowExpr, budget: EvalBudget | None = None) -> EvalResult:
    return _run(lambda ev: ev.expr(e), budget)


def exact_or_raise(e: ArrowExpr, budget: EvalBudget | None = None) -> int:
    res = evaluate(e, budget)
    if isinstance(res, Overflow):
        raise BudgetExceeded(res.residual, res.reason)
    return res.value
