"""Hereditary base-b representations as labelled rooted trees.

A representation is a sum of terms ``d * b^e`` where every exponent ``e``
is itself a representation in the same base. Terms are kept in strictly
descending exponent order, so two representations are equal exactly when
their values are equal, and comparison can walk the trees without ever
evaluating them.

Text form (one base fixed up front)::

    MISC  := EMPTY | SUM
    SUM   := DIGIT ('+' DIGIT)*
    DIGIT := d '(' MISC ')'        d in 1..b-1, written in decimal

so base 3 ``"1(2(1())+1())+2()"`` is ``3^7 + 2 = 2189``.
"""

from __future__ import annotations

import math
from functools import lru_cache

from .expr import Arrow, ArrowExpr, Lit, Ordering
from .hyperop import DEFAULT_BUDGET, EvalBudget, EvalResult, evaluate

__all__ = [
    "HereditaryRep",
    "HereditaryParseError",
    "zero",
    "one",
    "parse",
    "serialize",
    "from_natural",
    "value",
    "to_expr",
    "height",
    "extremes",
    "compare",
    "successor",
    "add",
    "multiply",
    "rebase",
    "decrement",
]


class HereditaryParseError(ValueError):
    def __init__(self, message: str, position: int):
        self.reason = message
        self.position = position
        super().__init__(f"{message} at offset {position}")


class HereditaryRep:
    """Immutable hereditary representation; build via the module functions."""

    __slots__ = ("base", "terms", "_hash")

    def __init__(self, base: int, terms=()):
        if base < 2:
            raise ValueError(f"base must be >= 2, got {base}")
        self.base = base
        self.terms = tuple(terms)
        self._hash = None

    def __eq__(self, other):
        if not isinstance(other, HereditaryRep):
            return NotImplemented
        return self is other or (self.base == other.base and self.terms == other.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.base, self.terms))
        return self._hash

    def __lt__(self, other):
        return compare(self, other) is Ordering.LT

    def __le__(self, other):
        return compare(self, other) is not Ordering.GT

    def __gt__(self, other):
        return compare(self, other) is Ordering.GT

    def __ge__(self, other):
        return compare(self, other) is not Ordering.LT

    def __bool__(self):
        return bool(self.terms)

    def __int__(self):
        b = self.base
        return sum(d * b ** int(e) for d, e in self.terms)

    def __repr__(self):
        return f"HereditaryRep({self.base}, {serialize(self)!r})"


def zero(base: int) -> HereditaryRep:
    return HereditaryRep(base)


def one(base: int) -> HereditaryRep:
    return HereditaryRep(base, ((1, zero(base)),))


def _check_base(a: HereditaryRep, b: HereditaryRep):
    if a.base != b.base:
        raise ValueError(f"base mismatch: {a.base} vs {b.base}")


# -- text form -------------------------------------------------------------


def parse(base: int, text: str) -> HereditaryRep:
    """Parse the bracket notation; sums may come in any exponent order."""
    if base < 2:
        raise ValueError(f"base must be >= 2, got {base}")
    pos = 0
    n = len(text)

    def misc() -> HereditaryRep:
        nonlocal pos
        if pos >= n or text[pos] == ")":
            return zero(base)
        terms = {}
        while True:
            start = pos
            d, e = digit()
            if e in terms:
                raise HereditaryParseError("duplicate exponent in sum", start)
            terms[e] = d
            if pos < n and text[pos] == "+":
                pos += 1
                continue
            break
        return _from_dict(base, terms)

    def digit():
        nonlocal pos
        start = pos
        while pos < n and text[pos].isdigit():
            pos += 1
        if pos == start:
            raise HereditaryParseError("expected a digit", pos)
        d = int(text[start:pos])
        if d == 0:
            raise HereditaryParseError("zero digit", start)
        if d >= base:
            raise HereditaryParseError(f"digit {d} not below base {base}", start)
        if pos >= n or text[pos] != "(":
            raise HereditaryParseError("expected '('", pos)
        pos += 1
        e = misc()
        if pos >= n or text[pos] != ")":
            raise HereditaryParseError("expected ')'", pos)
        pos += 1
        return d, e

    rep = misc()
    if pos != n:
        raise HereditaryParseError(f"unexpected {text[pos]!r}", pos)
    return rep


def serialize(rep: HereditaryRep) -> str:
    return "+".join(f"{d}({serialize(e)})" for d, e in rep.terms)


def _from_dict(base: int, terms: dict) -> HereditaryRep:
    items = sorted(terms.items(), key=lambda kv: kv[0], reverse=True)
    return HereditaryRep(base, ((d, e) for e, d in items if d))


# -- conversion ------------------------------------------------------------


@lru_cache(maxsize=65536)
def from_natural(n: int, base: int) -> HereditaryRep:
    if n < 0:
        raise ValueError(f"cannot represent negative {n}")
    if base < 2:
        raise ValueError(f"base must be >= 2, got {base}")
    terms = []
    j = 0
    while n:
        n, d = divmod(n, base)
        if d:
            terms.append((d, from_natural(j, base)))
        j += 1
    terms.reverse()
    return HereditaryRep(base, terms)


def to_expr(rep: HereditaryRep) -> ArrowExpr:
    """Power-sum expression with the same value.

    Sums use level -1 arrows, digit factors level 0 and powers level 1.
    """
    if not rep.terms:
        return Lit(0)
    b = rep.base
    parts = []
    for d, e in rep.terms:
        if not e.terms:
            parts.append(Lit(d))
            continue
        ex = to_expr(e)
        p = Arrow(Lit(b), ex, 1)
        parts.append(p if d == 1 else Arrow(Lit(d), p, 0))
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = Arrow(p, out, -1)
    return out


def value(rep: HereditaryRep, budget: EvalBudget | None = None) -> EvalResult:
    return evaluate(to_expr(rep), budget or DEFAULT_BUDGET)


def height(rep: HereditaryRep) -> int:
    if not rep.terms:
        return 0
    return 1 + max(height(e) for _, e in rep.terms)


def extremes(k: int, base: int, max_terms: int = 1 << 20) -> tuple[HereditaryRep, HereditaryRep]:
    """Smallest and largest representations of height ``k``.

    Values are ``b^^(k-1)`` and ``b^^k - 1``; the maximum has
    ``b^^(k-1)`` terms, which must not exceed ``max_terms``.
    """
    if k < 0:
        raise ValueError("height must be >= 0")
    if k == 0:
        return zero(base), zero(base)
    lo = zero(base)
    for _ in range(k):
        lo = HereditaryRep(base, ((1, lo),))
    count = 1
    for _ in range(k - 1):
        if count * math.log10(base) > math.log10(max_terms) + 1:
            count = max_terms + 1
            break
        count = base**count
    if count > max_terms:
        raise OverflowError(f"maximum of height {k} in base {base} has too many terms")
    hi = HereditaryRep(base, ((base - 1, from_natural(j, base)) for j in range(count - 1, -1, -1)))
    return lo, hi


# -- arithmetic ------------------------------------------------------------


def compare(a: HereditaryRep, b: HereditaryRep) -> Ordering:
    """Structural comparison; never evaluates either side."""
    _check_base(a, b)
    if a is b:
        return Ordering.EQ
    for (da, ea), (db, eb) in zip(a.terms, b.terms):
        c = compare(ea, eb)
        if c is not Ordering.EQ:
            return c
        if da != db:
            return Ordering.LT if da < db else Ordering.GT
    return Ordering.of(len(a.terms), len(b.terms))


def _normalize(base: int, acc: dict) -> HereditaryRep:
    """Carry digits >= base into the next exponent until all are digits."""
    while True:
        over = [e for e, d in acc.items() if d >= base]
        if not over:
            break
        e = min(over)
        q, r = divmod(acc[e], base)
        if r:
            acc[e] = r
        else:
            del acc[e]
        nxt = successor(e)
        acc[nxt] = acc.get(nxt, 0) + q
    return _from_dict(base, acc)


def successor(rep: HereditaryRep) -> HereditaryRep:
    b = rep.base
    if not rep.terms:
        return one(b)
    d, e = rep.terms[-1]
    if e.terms:
        # no units term yet
        return HereditaryRep(b, rep.terms + ((1, zero(b)),))
    if d + 1 < b:
        return HereditaryRep(b, rep.terms[:-1] + ((d + 1, e),))
    acc = {e: d for d, e in rep.terms}
    acc[e] += 1
    return _normalize(b, acc)


def add(a: HereditaryRep, b: HereditaryRep) -> HereditaryRep:
    _check_base(a, b)
    if not b.terms:
        return a
    if not a.terms:
        return b
    acc = {e: d for d, e in a.terms}
    for d, e in b.terms:
        acc[e] = acc.get(e, 0) + d
    return _normalize(a.base, acc)


def multiply(a: HereditaryRep, b: HereditaryRep) -> HereditaryRep:
    _check_base(a, b)
    acc: dict = {}
    for da, ea in a.terms:
        for db, eb in b.terms:
            e = add(ea, eb)
            acc[e] = acc.get(e, 0) + da * db
    return _normalize(a.base, acc)


def rebase(rep: HereditaryRep, new_base: int) -> HereditaryRep:
    """Same tree and digit labels, read in ``new_base``."""
    if new_base < 2:
        raise ValueError(f"base must be >= 2, got {new_base}")
    if new_base == rep.base:
        return rep
    return _rebase(rep, new_base)


@lru_cache(maxsize=65536)
def _rebase(rep: HereditaryRep, new_base: int) -> HereditaryRep:
    terms = []
    for d, e in rep.terms:
        if d >= new_base:
            raise ValueError(f"digit {d} is not below the new base {new_base}")
        terms.append((d, _rebase(e, new_base)))
    return HereditaryRep(new_base, terms)


def decrement(rep: HereditaryRep, max_terms: int = 1 << 20) -> HereditaryRep | None:
    """``rep - 1``; ``None`` stands for -1 (decrementing zero).

    Borrowing from ``d * b^e`` leaves ``(d-1) * b^e`` plus ``b^e - 1``,
    i.e. the digit ``b-1`` at every exponent below ``e``.
    """
    b = rep.base
    if not rep.terms:
        return None
    d, e = rep.terms[-1]
    head = rep.terms[:-1]
    if d > 1:
        head = head + ((d - 1, e),)
    if not e.terms:
        return HereditaryRep(b, head)
    width = int(e)
    if width > max_terms:
        raise OverflowError(f"borrow would create {width} terms")
    tail = tuple((b - 1, from_natural(j, b)) for j in range(width - 1, -1, -1))
    return HereditaryRep(b, head + tail)
