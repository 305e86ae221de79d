"""Certified magnitudes of numbers far beyond exact evaluation.

A :class:`Tower` encloses ``10^10^...^10^v`` with ``height`` exponentiations
and ``v`` an interval. Canonical form keeps ``v <= 10^6`` and, for positive
heights, ``v > 6``, so two canonical towers whose heights differ by two or
more are ordered by height alone.

Adding a small ``s`` at height ``j`` (``10^^j(v) + s``) is exact for
``j <= 1``. For ``j >= 2`` the change in ``v`` is at most
``2|s| / (X ln 10)`` with ``X = 10^^j(v) >= 10^(10^v)``, and ``v`` is widened
by that bound instead.
"""

from __future__ import annotations

import math
from fractions import Fraction

from mpmath.libmp import from_int, mpf_cmp

from ..expr import SM, Arrow, ArrowExpr, GenArrow, Lit, Ordering
from ..interval import Interval

__all__ = ["Tower", "tower_cmp", "tetrate", "iterate_power", "of_int", "add", "mul", "power", "MagnitudeCache"]

BITS = 256
V_HIGH = 10**6
V_LOW = 6
E_CAP = 10**6
MAX_ITER = 100_000


class Tower:
    __slots__ = ("height", "v")

    def __init__(self, height: int, v: Interval):
        self.height = height
        self.v = v

    @property
    def is_zero(self) -> bool:
        return self.height == 0 and _is_point(self.v, 0)

    def __repr__(self):
        return f"Tower({self.height}, [{self.v.lower_str(12)}, {self.v.upper_str(12)}])"

    def __str__(self):
        mid = self.v.upper_str(8)
        return mid if self.height == 0 else f"10^^{self.height}({mid})"


def _is_point(v: Interval, n: int) -> bool:
    p = from_int(n)
    return mpf_cmp(v.lo, p) == 0 and mpf_cmp(v.hi, p) == 0


def _canon(height: int, v: Interval) -> Tower | None:
    while True:
        if not v.le(V_HIGH):
            if not v.positive():
                return None
            v = v.log10()
            height += 1
        elif height > 0 and v.le(V_LOW):
            v = v.exp10()
            height -= 1
        else:
            return Tower(height, v)


def of_int(n: int, bits: int = BITS) -> Tower:
    if n < 0:
        raise ValueError("towers enclose naturals")
    if n <= V_HIGH:
        return Tower(0, Interval.from_int(n, bits))
    return _canon(1, Interval.from_int(n, bits).log10())


def log10(t: Tower) -> Tower | None:
    if t.height >= 1:
        return _canon(t.height - 1, t.v)
    if not t.v.positive():
        return None
    return _canon(0, t.v.log10())


def exp10(t: Tower) -> Tower | None:
    return _canon(t.height + 1, t.v)


def _mag_upper(s: Interval) -> Fraction:
    return max(abs(s.lower_fraction()), abs(s.upper_fraction()))


def _floor_power(v_lo: Fraction) -> int:
    """A lower bound on ``min(10^v_lo, E_CAP)`` as an integer."""
    if v_lo <= 0:
        return 1
    x = min(float(v_lo), math.log10(E_CAP))
    return max(1, int(10**x * (1 - 1e-9)) - 1)


def _add_at(height: int, v: Interval, s: Interval) -> Interval | None:
    """``v'`` with ``10^^height(v') = 10^^height(v) + s``."""
    if height == 0:
        return v + s
    if height == 1:
        arg = (-v).exp10() * s + 1
        if not arg.positive():
            return None
        return v + arg.log10()
    lo = v.lower_fraction()
    if lo < 0:
        return None
    e = _floor_power(lo)
    smax = _mag_upper(s)
    if smax == 0:
        return v
    # needs |s| <= X/4 so every logarithm step stays in its linear regime
    if math.log10(smax.numerator) - math.log10(smax.denominator) > e - 1:
        return None
    w = Interval.from_fraction(smax, v.prec) * _pow10(-e, v.prec)
    return _widen(v, w)


def _pow10(e: int, prec: int) -> Interval:
    return Interval.from_int(e, prec).exp10()


def _widen(v: Interval, w: Interval) -> Interval:
    return Interval((v - w).lo, (v + w).hi, v.prec)


def add_small(t: Tower, s: Interval) -> Tower | None:
    v = _add_at(t.height, t.v, s)
    return None if v is None else _canon(t.height, v)


def _lower_value(t: Tower) -> Fraction:
    """A lower bound on the value, capped at ``E_CAP``."""
    if t.height == 0:
        return min(t.v.lower_fraction(), Fraction(E_CAP))
    return Fraction(_floor_power(t.v.lower_fraction()))


def add(x: Tower, y: Tower) -> Tower | None:
    """Sum of two enclosures; height-0 operands may be negative."""
    if x.height < y.height:
        x, y = y, x
    if y.height == 0:
        return add_small(x, y.v)
    lx, ly = log10(x), log10(y)
    if lx is None or ly is None:
        return None
    if lx.height == 0 and ly.height == 0:
        # x + y = x * (1 + 10^(ly - lx))
        s = ((ly.v - lx.v).exp10() + 1).log10()
        return exp10(Tower(0, lx.v + s))
    o = tower_cmp(x, y)
    if o is None:
        return None
    if o is Ordering.LT:
        x, y, lx, ly = y, x, ly, lx
    prec = x.v.prec
    if ly.height == 0:
        # y/x <= 10^(ly - lx) and log10(1 + r) < r
        gap = _lower_value(lx) - ly.v.upper_fraction()
        if gap <= 0:
            return None
        top = _pow10(-math.floor(gap), prec)
        s = Interval(from_int(0), top.hi, prec)
    else:
        s = Interval(from_int(0), Interval.from_int(2, prec).log10().hi, prec)
    big = add_small(lx, s)
    return None if big is None else exp10(big)


def mul(x: Tower, y: Tower) -> Tower | None:
    if x.is_zero or y.is_zero:
        return Tower(0, Interval.from_int(0, x.v.prec))
    lx, ly = log10(x), log10(y)
    if lx is None or ly is None:
        return None
    s = add(lx, ly)
    return None if s is None else exp10(s)


def power(x: Tower, y: Tower) -> Tower | None:
    prec = x.v.prec
    if y.is_zero:
        return of_int(1, prec)
    if x.is_zero:
        return x
    if x.height == 0 and _is_point(x.v, 1):
        return x
    lx = log10(x)
    if lx is None:
        return None
    p = mul(lx, y)
    return None if p is None else exp10(p)


def iterate_power(base: Tower, start: Tower, count: int, jump: bool = True) -> Tower | None:
    """``base^base^...^start`` with ``count`` applications.

    Once the tower is tall, every further step adds one level and moves
    ``v`` by at most a fixed width (the added term is a constant at a
    height where the capped bound applies), so the remaining steps are
    taken in a single jump.
    """
    x = start
    done = 0
    while done < count:
        nxt = power(base, x)
        if nxt is None:
            return None
        done += 1
        if (
            jump
            and x.height >= 5
            and nxt.height == x.height + 1
            and x.v.lower_fraction() > V_LOW + 1
            and base.height <= 2
        ):
            w = max(
                x.v.lower_fraction() - nxt.v.lower_fraction(),
                nxt.v.upper_fraction() - x.v.upper_fraction(),
                Fraction(0),
            )
            rest = count - done
            spread = w * rest
            if nxt.v.lower_fraction() - spread > V_LOW + 1:
                v = _widen(nxt.v, Interval.from_fraction(spread, nxt.v.prec))
                return Tower(nxt.height + rest, v)
        if done > MAX_ITER:
            return None
        x = nxt
    return x


def tetrate(base: Tower, n: int, jump: bool = True) -> Tower | None:
    if n == 0:
        return of_int(1, base.v.prec)
    return iterate_power(base, base, n - 1, jump)


def tower_cmp(x: Tower, y: Tower) -> Ordering | None:
    """Certified ordering, or ``None`` when the enclosures cannot decide."""
    if x.height == y.height:
        if x.v.lt(y.v):
            return Ordering.LT
        if x.v.gt(y.v):
            return Ordering.GT
        if x.height == 0 and mpf_cmp(x.v.lo, x.v.hi) == 0 and x.v.contains(y.v) and y.v.contains(x.v):
            return Ordering.EQ
        return None
    if x.height > y.height:
        o = tower_cmp(y, x)
        return None if o is None else Ordering(-o)
    # y is taller: y = 10^^x.height(D) with D >= 10^(y.v)
    floor_d = Interval(y.v.lo, y.v.lo, y.v.prec).exp10()
    if mpf_cmp(x.v.hi, floor_d.lo) < 0:
        return Ordering.LT
    if y.height - x.height == 1 and mpf_cmp(x.v.lo, y.v.exp10().hi) > 0:
        return Ordering.GT
    return None


# -- expressions -----------------------------------------------------------


class MagnitudeCache:
    """Memoized magnitudes; exact values come from ``exact_fn``."""

    def __init__(self, exact_fn, bits: int = BITS):
        self.exact_fn = exact_fn
        self.bits = bits
        self._memo: dict = {}

    def __call__(self, e: ArrowExpr) -> Tower | None:
        if e not in self._memo:
            self._memo[e] = self._compute(e)
        return self._memo[e]

    def _compute(self, e: ArrowExpr) -> Tower | None:
        n = self.exact_fn(e)
        if n is not None:
            return of_int(n, self.bits)
        if isinstance(e, Arrow):
            return self._arrow(e)
        if isinstance(e, GenArrow):
            return self._gen_arrow(e)
        if isinstance(e, SM):
            return self._sm(e.polygon, e.n, e.times)
        return None

    def _arrow(self, e: Arrow) -> Tower | None:
        a = self(e.a)
        if a is None:
            return None
        if e.k == 2 or e.k >= 3:
            n = self.exact_fn(e.b)
            if n is None:
                return None
            if e.k == 2:
                return tetrate(a, n)
            if n == 0:
                return of_int(1, self.bits)
            inner = self.exact_fn(Arrow(e.a, Lit(n - 1), e.k))
            if inner is None:
                return None
            return self(Arrow(e.a, Lit(inner), e.k - 1))
        b = self(e.b)
        if b is None:
            return None
        if e.k == -2:
            o = tower_cmp(a, b)
            if o is None:
                return None
            big = b if o is Ordering.LT else a
            return add(big, of_int(1, self.bits))
        if e.k == -1:
            return add(a, b)
        if e.k == 0:
            return mul(a, b)
        return power(a, b)

    def _gen_arrow(self, e: GenArrow) -> Tower | None:
        count = self.exact_fn(e.b)
        a, c = self(e.a), self(e.c)
        if count is None or a is None or c is None:
            return None
        if e.k == 2:
            return iterate_power(a, c, count)
        if e.k == 1:
            if count > MAX_ITER:
                return None
            for _ in range(count):
                c = mul(a, c)
                if c is None:
                    return None
            return c
        return None

    def _sm(self, p: int, n_expr: ArrowExpr, times: int) -> Tower | None:
        n = self.exact_fn(n_expr)
        if p == 3:
            x = self(n_expr)
            if x is None or times > MAX_ITER:
                return None
            for _ in range(times):
                x = power(x, x)
                if x is None:
                    return None
            return x
        if n is None:
            return None
        # SM_p(x) = SM_{p-1}^x(x); only the first application can stay exact
        first = SM(p - 1, Lit(n), n)
        if times == 1:
            return self(first)
        v = self.exact_fn(first)
        if v is None:
            return None
        return self(SM(p, Lit(v), times - 1))
