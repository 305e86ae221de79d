"""Bound certificates for polygon and arrow expressions, and a certified
comparison of arbitrary expression trees.

:func:`compare_expr` tries, in order: exact evaluation, certified tower
magnitudes (:mod:`.tower`), height shifting between tetrations, and the
polygon sandwich bounds. Every step that succeeds leaves a
:class:`BoundCertificate`; nothing is ever guessed.

Height shifting rests on this inequality, for integers ``a > b >= 2``::

    c = log_b(a),  e >= 1 with b^e >= c + e,  c*a + e <= b^^(1+d)
    ==>  a^^n <= b^^(n+d)  for every n >= 0

(induct on ``n`` with the stronger claim ``c * a^^n + e <= b^^(n+d)``).
When ``a <= b^^M`` for some ``M >= 1`` the same argument with
``c = b^^(M-1)`` and ``e = c`` gives ``a^^n <= b^^(n+M)``.
"""

from __future__ import annotations

import math
from dataclasses import replace

from ..expr import (
    EXACT_EVAL,
    LOG_COMPARE,
    SM,
    STRUCTURAL,
    Arrow,
    ArrowExpr,
    BoundCertificate,
    Lit,
    Ordering,
    normalize,
    render,
)
from ..hyperop import DEFAULT_BUDGET, EvalBudget, Exact, evaluate
from ..interval import Interval
from . import tower
from .scinot import rounded_agreement, sci_notation
from .tower import MagnitudeCache, tower_cmp

__all__ = [
    "UNRESOLVED",
    "compare_expr",
    "sm_bound_certificates",
    "tower_lemma_check",
    "mega_bounds",
    "megiston_bounds",
    "sm_lower_upper",
]

MAX_DEPTH = 10
MEGA = SM(5, Lit(2))
MEGISTON = SM(5, Lit(10))


class _Unresolved:
    __slots__ = ()

    def __repr__(self):
        return "UNRESOLVED"

    def __str__(self):
        return "UNRESOLVED"


UNRESOLVED = _Unresolved()

LOWER_NOTE = "polygon lower bound n^[m](k+1) <= SM[m+1]^k(n), m >= 2"
TRIANGLE_NOTE = "triangle upper bound SM[3]^k(n) <= n^n^((n+1)^^(k-1)), k >= 1"
UPPER_NOTE = "polygon upper bound SM[m+1]^k(n) <= n^[m-1]((n+1)^[m]k)"
UPPER_BROKEN = "not established: the upper bound is false at k=1 for m >= 3, so its induction has no valid start"


def _cert(lhs, rhs, strict, method, note="", verified=True) -> BoundCertificate:
    return BoundCertificate(lhs, rhs, "<" if strict else "<=", method, verified, note)


def _add(x: ArrowExpr, d: ArrowExpr) -> ArrowExpr:
    if d == Lit(0):
        return x
    if isinstance(x, Lit) and isinstance(d, Lit):
        return Lit(x.value + d.value)
    return Arrow(x, d, -1)


class _Prover:
    def __init__(self, budget: EvalBudget):
        self.budget = budget
        self._exact: dict = {}
        self.mag = MagnitudeCache(self.exact)

    def exact(self, e: ArrowExpr) -> int | None:
        if e not in self._exact:
            r = evaluate(e, self.budget)
            self._exact[e] = r.value if isinstance(r, Exact) else None
        return self._exact[e]

    # -- shapes ---------------------------------------------------------

    def tet_form(self, e: ArrowExpr):
        """``(base, height)`` with ``e == base ^^ height``, if recognisable."""
        if isinstance(e, Arrow):
            if e.k == 2:
                return e.a, e.b
            if e.k == 3:
                n = self.exact(e.b)
                if n is not None and n >= 2:
                    return e.a, normalize(Arrow(e.a, Lit(n - 1), 3))
            if e.k == 1:
                inner = self.tet_form(e.b)
                if inner is not None and inner[0] == e.a:
                    return e.a, _add(inner[1], Lit(1))
        return None

    def height_above(self, mx: tower.Tower, b: int) -> int | None:
        """Some ``m`` with ``x < b^^m``, certified."""
        mb = tower.of_int(b)
        start = max(1, mx.height - 2)
        for m in range(start, start + 12):
            t = tower.tetrate(mb, m)
            if t is not None and tower_cmp(mx, t) is Ordering.LT:
                return m
        return None

    def at_least_two(self, e: ArrowExpr) -> bool:
        n = self.exact(e)
        if n is not None:
            return n >= 2
        m = self.mag(e)
        return m is not None and tower_cmp(tower.of_int(2), m) in (Ordering.LT, Ordering.EQ)

    def int_shift(self, a: int, b: int) -> int:
        if a <= b:
            return 0
        c = (Interval.from_int(a, 128).log() / Interval.from_int(b, 128).log()).upper_fraction()
        e = 1
        while b**e < c + e:
            e += 1
        target = c * a + e
        # smallest d with b^^(1+d) >= target
        v, d = b, 0
        log_target = math.log2(target.numerator) - math.log2(target.denominator)
        while v < target:
            d += 1
            if v * math.log2(b) > log_target + 1:
                break
            v = b**v
        return d

    def shift(self, a_expr: ArrowExpr, b: int):
        """``d`` (an expression) with ``a^^n <= b^^(n+d)`` for all ``n``."""
        a = self.exact(a_expr)
        if a is not None:
            return Lit(self.int_shift(a, b)) if a >= 1 else None
        form = self.tet_form(a_expr)
        if form is not None:
            b2 = self.exact(form[0])
            if b2 is not None and b2 >= 2:
                return _add(form[1], Lit(self.int_shift(b2, b)))
        ma = self.mag(a_expr)
        if ma is not None:
            m = self.height_above(ma, b)
            if m is not None:
                return Lit(m)
        return None

    # -- proof search ---------------------------------------------------

    def decide(self, x, y, strict):
        """``(True, chain)``, ``(False, chain)`` or ``(None, [])``."""
        ex, ey = self.exact(x), self.exact(y)
        if ex is not None and ey is not None:
            ok = ex < ey if strict else ex <= ey
            return ok, [_cert(x, y, strict, EXACT_EVAL, f"{_short(ex)} vs {_short(ey)}", ok)]
        chain = self.prove(x, y, strict)
        if chain is not None:
            return True, chain
        mx, my = self.mag(x), self.mag(y)
        if mx is not None and my is not None:
            o = tower_cmp(mx, my)
            if o is Ordering.GT or (strict and o is Ordering.EQ):
                return False, [_cert(x, y, strict, LOG_COMPARE, f"refuted: {mx} vs {my}", False)]
        return None, []

    def prove(self, x, y, strict, depth=0):
        if depth > MAX_DEPTH:
            return None
        if x == y:
            return None if strict else [_cert(x, y, False, STRUCTURAL, "identical expressions")]
        ex, ey = self.exact(x), self.exact(y)
        if ex is not None and ey is not None:
            ok = ex < ey if strict else ex <= ey
            return [_cert(x, y, strict, EXACT_EVAL, f"{_short(ex)} vs {_short(ey)}")] if ok else None
        if ex is not None and ex <= 1 and not strict and self._at_least_one(y):
            return [_cert(x, y, False, STRUCTURAL, "every arrow of positive integers is at least 1")]
        mx, my = self.mag(x), self.mag(y)
        if mx is not None and my is not None:
            o = tower_cmp(mx, my)
            if o is Ordering.LT or (o is Ordering.EQ and not strict):
                return [_cert(x, y, strict, LOG_COMPARE, f"{mx} vs {my}")]
            if o is not None:
                return None
        for rule in (self._by_height, self._by_sum, self._by_sandwich):
            chain = rule(x, y, strict, depth)
            if chain is not None:
                return chain
        return None

    def _at_least_one(self, e) -> bool:
        if isinstance(e, Arrow) and e.k >= 1:
            a = self.exact(e.a)
            return a >= 1 if a is not None else self.at_least_two(e.a)
        return False

    def _by_height(self, x, y, strict, depth):
        ty = self.tet_form(y)
        if ty is None:
            return None
        b = self.exact(ty[0])
        if b is None and self.at_least_two(ty[0]) and self._at_least_one(y):
            h = self.exact(ty[1])
            if h is None or h >= 1:
                chain = self.prove(x, ty[0], strict, depth + 1)
                if chain is not None:
                    return chain + [_cert(ty[0], y, False, STRUCTURAL, "a base is at most its tetration")]
        if b is None or b < 2:
            return None
        tx = self.tet_form(x)
        if tx is not None:
            d = self.shift(tx[0], b)
            if d is not None:
                chain = self.prove(_add(tx[1], d), ty[1], strict, depth + 1)
                if chain is not None:
                    note = f"height shift: ({render(tx[0])})^^n <= {b}^^(n+{render(d)})"
                    return chain + [_cert(x, y, strict, STRUCTURAL, note)]
        mx = self.mag(x)
        if mx is not None:
            m = self.height_above(mx, b)
            if m is not None:
                chain = self.prove(Lit(m), ty[1], False, depth + 1)
                if chain is not None:
                    bound = Arrow(Lit(b), Lit(m), 2)
                    return (
                        [_cert(x, bound, True, LOG_COMPARE, f"{mx} below {b}^^{m}")]
                        + chain
                        + [_cert(x, y, strict, STRUCTURAL, "tetration is increasing in height")]
                    )
        return None

    def _by_sum(self, x, y, strict, depth):
        if isinstance(y, Arrow) and y.k == -1:
            for part in (y.a, y.b):
                chain = self.prove(x, part, strict, depth + 1)
                if chain is not None:
                    return chain + [_cert(part, y, False, STRUCTURAL, "a summand is at most the sum")]
        if isinstance(x, Arrow) and x.k == -1:
            for big, small in ((x.a, x.b), (x.b, x.a)):
                form = self.tet_form(big)
                if form is None:
                    continue
                if not self.at_least_two(form[0]):
                    continue
                if self.prove(small, big, False, depth + 1) is None:
                    continue
                up = Arrow(form[0], _add(form[1], Lit(1)), 2)
                chain = self.prove(up, y, strict, depth + 1)
                if chain is not None:
                    note = "P + s <= 2P <= c^P when s <= P"
                    return [_cert(x, up, False, STRUCTURAL, note)] + chain
        return None

    def _by_sandwich(self, x, y, strict, depth):
        if isinstance(y, SM):
            lo, lo_cert = self.sm_bounds(y)[0]
            chain = self.prove(x, lo, strict, depth + 1)
            if chain is not None:
                return chain + [lo_cert]
        if isinstance(x, SM):
            up, up_cert = self.sm_bounds(x)[1]
            if up_cert.verified:
                chain = self.prove(up, y, strict, depth + 1)
                if chain is not None:
                    return [up_cert] + chain
        return None

    # -- polygon sandwich -----------------------------------------------

    def unfold(self, e: SM):
        """``(m, n, k)`` with ``e == SM[m+1]^k(n)``, peeling exact layers."""
        n = self.exact(e.n)
        if n is None:
            return None
        p, t = e.polygon, e.times
        while t >= 1:
            if t > 1:
                v = self.exact(SM(p, Lit(n), 1))
                if v is not None:
                    n, t = v, t - 1
                    continue
            if t == 1 and p >= 4:
                p, t = p - 1, n
                continue
            break
        return p - 1, n, t

    def sm_bounds(self, e: SM):
        """``((lower, cert), (upper, cert))`` for a polygon node."""
        shape = self.unfold(e)
        if shape is None:
            return (None, _cert(e, e, False, STRUCTURAL, "no bound", False)), (None, _cert(e, e, False, STRUCTURAL, "no bound", False))
        m, n, k = shape
        lo, up, up_ok, up_note = sm_lower_upper(m, n, k)
        same = f"{render(e)} = SM[{m + 1}]^{k}({n})"
        return (
            (lo, _cert(lo, e, False, STRUCTURAL, f"{LOWER_NOTE}; {same}")),
            (up, _cert(e, up, False, STRUCTURAL, f"{up_note}; {same}", up_ok)),
        )


def _short(n: int) -> str:
    if n.bit_length() < 200:
        return str(n)
    return f"<{n.bit_length()}-bit integer>"


def sm_lower_upper(m: int, n: int, k: int):
    """``(lower, upper, upper_established, note)`` for ``SM[m+1]^k(n)``."""
    lower = Arrow(Lit(n), Lit(k + 1), m)
    if m == 2 and k >= 1:
        upper = Arrow(Lit(n), Arrow(Lit(n), Arrow(Lit(n + 1), Lit(k - 1), 2), 1), 1)
        return lower, upper, True, TRIANGLE_NOTE
    upper = Arrow(Lit(n), Arrow(Lit(n + 1), Lit(k), m), m - 1)
    if m == 2 or k == 0:
        return lower, upper, True, UPPER_NOTE
    return lower, upper, False, f"{UPPER_NOTE}; {UPPER_BROKEN}"


def _summary(lhs, rhs, strict, chain, verified=True) -> BoundCertificate:
    methods = {c.method for c in chain}
    if methods <= {EXACT_EVAL}:
        method = EXACT_EVAL
    elif STRUCTURAL in methods:
        method = STRUCTURAL
    else:
        method = LOG_COMPARE
    if len(chain) == 1:
        return replace(chain[0], lhs=lhs, rhs=rhs, relation="<" if strict else "<=", verified=verified)
    note = " ; ".join(str(c) for c in chain)
    return _cert(lhs, rhs, strict, method, note, verified)


def compare_expr(e1: ArrowExpr, e2: ArrowExpr, budget: EvalBudget | None = None):
    """``(Ordering or UNRESOLVED, certificate chain)``."""
    p = _Prover(budget or DEFAULT_BUDGET)
    x, y = normalize(e1), normalize(e2)
    if x == y:
        return Ordering.EQ, [_cert(e1, e2, False, STRUCTURAL, "identical after normalization")]
    ex, ey = p.exact(x), p.exact(y)
    if ex is not None and ey is not None:
        o = Ordering.of(ex, ey)
        if o is Ordering.EQ:
            return o, [_cert(e1, e2, False, EXACT_EVAL, str(ex)), _cert(e2, e1, False, EXACT_EVAL, str(ex))]
        lo, hi = (e1, e2) if o is Ordering.LT else (e2, e1)
        return o, [_cert(lo, hi, True, EXACT_EVAL, f"{_short(min(ex, ey))} < {_short(max(ex, ey))}")]
    for o, (a, b) in ((Ordering.LT, (x, y)), (Ordering.GT, (y, x))):
        chain = p.prove(a, b, True)
        if chain is not None:
            return o, _annotate_powers(a, b, chain)
    bounds = []
    for e in (x, y):
        if isinstance(e, SM):
            (_, lo_cert), (_, up_cert) = p.sm_bounds(e)
            bounds += [lo_cert, up_cert]
    return UNRESOLVED, bounds


def _annotate_powers(a, b, chain):
    """Add the leading digits when both sides are plain powers."""
    pair = []
    for e in (a, b):
        if isinstance(e, Arrow) and e.k == 1 and isinstance(e.a, Lit) and isinstance(e.b, Lit) and e.a.value >= 2:
            pair.append((e.a.value, e.b.value))
    if len(pair) != 2:
        return chain
    try:
        s1, s2 = (sci_notation(base, ex, 7) for base, ex in pair)
    except (ArithmeticError, ValueError):
        return chain
    agree = rounded_agreement(s1, s2)
    note = f"{s1} vs {s2}; equal when rounded to {agree} significant digits"
    last = chain[-1]
    return chain[:-1] + [replace(last, note=f"{last.note}; {note}" if last.note else note)]


def tower_lemma_check(A: int, B: int, C: int, k: int, budget: EvalBudget | None = None) -> BoundCertificate:
    """Certificate for ``(A ^k B) ^k C <= A ^k (B + C)``."""
    if k < 2:
        raise ValueError("the composition bound needs k >= 2")
    if min(A, B, C) < 1:
        raise ValueError("A, B and C must be positive")
    lhs = Arrow(Arrow(Lit(A), Lit(B), k), Lit(C), k)
    rhs = Arrow(Lit(A), Lit(B + C), k)
    p = _Prover(budget or DEFAULT_BUDGET)
    ok, chain = p.decide(normalize(lhs), normalize(rhs), False)
    if ok is not None:
        return _summary(lhs, rhs, False, chain, ok)
    return _cert(lhs, rhs, False, STRUCTURAL, "composition bound (A^kB)^kC <= A^k(B+C) for k >= 2")


def sm_bound_certificates(m: int, n: int, k: int, budget: EvalBudget | None = None):
    """``(lower, upper)`` certificates around ``SM[m+1]^k(n)``."""
    if m < 2:
        raise ValueError("m must be >= 2: at m = 1 the lower bound n^(n+1) <= n^n is false")
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    p = _Prover(budget or DEFAULT_BUDGET)
    sm = SM(m + 1, Lit(n), k)
    lower, upper, up_ok, up_note = sm_lower_upper(m, n, k)
    eq = "; k=0: both sides equal n" if k == 0 else ""
    out = []
    for lhs, rhs, fallback_ok, note in ((lower, sm, True, LOWER_NOTE), (sm, upper, up_ok, up_note)):
        ok, chain = p.decide(normalize(lhs), normalize(rhs), False)
        if ok is not None:
            c = _summary(lhs, rhs, False, chain, ok)
            out.append(replace(c, note=f"{c.note}{eq}"))
        else:
            out.append(_cert(lhs, rhs, False, STRUCTURAL, note, fallback_ok))
    return tuple(out)


def _chain(items, budget):
    p = _Prover(budget or DEFAULT_BUDGET)
    out = []
    for lhs, rhs, note, ok in items:
        chain = p.prove(normalize(lhs), normalize(rhs), False)
        if chain is not None:
            c = _summary(lhs, rhs, False, chain)
            out.append(replace(c, note=f"{note}; {c.note}" if c.note else note))
        else:
            out.append(_cert(lhs, rhs, False, STRUCTURAL, note, ok))
    return out


def mega_bounds(budget: EvalBudget | None = None) -> list:
    """``256^^257 <= mega <= 256^256^(257^^255) <= 257^^257``."""
    mid = Arrow(Lit(256), Arrow(Lit(256), Arrow(Lit(257), Lit(255), 2), 1), 1)
    return _chain(
        [
            (Arrow(Lit(256), Lit(257), 2), MEGA, f"mega = SM[3]^256(256); {LOWER_NOTE}", True),
            (MEGA, mid, f"mega = SM[3]^256(256); {TRIANGLE_NOTE}", True),
            (mid, Arrow(Lit(257), Lit(257), 2), "256 <= 257 at every level", True),
        ],
        budget,
    )


def megiston_bounds(budget: EvalBudget | None = None) -> list:
    """``10^^^11 <= megiston <= 10^^(11^^^10) <= 11^^^11``."""
    mid = Arrow(Lit(10), Arrow(Lit(11), Lit(10), 3), 2)
    return _chain(
        [
            (Arrow(Lit(10), Lit(11), 3), MEGISTON, f"megiston = SM[4]^10(10); {LOWER_NOTE}", True),
            (MEGISTON, mid, f"megiston = SM[4]^10(10); {UPPER_NOTE}; {UPPER_BROKEN}", False),
            (mid, Arrow(Lit(11), Lit(11), 3), "10 <= 11 at the tetration base", True),
        ],
        budget,
    )
