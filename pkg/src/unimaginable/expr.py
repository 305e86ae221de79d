"""Symbolic expressions for giant numbers and bound certificates.

An expression tree is built from four node kinds:

* ``Lit(n)``              a literal natural number
* ``Arrow(a, b, k)``      the level-``k`` hyperoperation ``a ^...^ b``
  (``k = -2`` is max+1, ``k = -1`` addition, ``k = 0`` multiplication)
* ``GenArrow(a, b, k, c)`` ``b`` right-nested applications of ``a ^(k-1) .``
  to ``c``
* ``SM(p, n, times)``     the ``p``-gon Steinhaus-Moser function iterated
  ``times`` times on ``n``

Nodes are frozen dataclasses, so equal trees compare and hash equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import Union

__all__ = [
    "Ordering",
    "Lit",
    "Arrow",
    "GenArrow",
    "SM",
    "ArrowExpr",
    "lit",
    "render",
    "normalize",
    "BoundCertificate",
    "EXACT_EVAL",
    "LOG_COMPARE",
    "STRUCTURAL",
]


class Ordering(IntEnum):
    LT = -1
    EQ = 0
    GT = 1

    @classmethod
    def of(cls, a, b) -> "Ordering":
        return cls((a > b) - (a < b))


@dataclass(frozen=True)
class Lit:
    value: int

    def __post_init__(self):
        if self.value < 0:
            raise ValueError(f"literal must be a natural number, got {self.value}")


@dataclass(frozen=True)
class Arrow:
    a: "ArrowExpr"
    b: "ArrowExpr"
    k: int

    def __post_init__(self):
        if self.k < -2:
            raise ValueError(f"arrow level must be >= -2, got {self.k}")


@dataclass(frozen=True)
class GenArrow:
    a: "ArrowExpr"
    b: "ArrowExpr"
    k: int
    c: "ArrowExpr"

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"generalized arrow level must be >= 1, got {self.k}")


@dataclass(frozen=True)
class SM:
    polygon: int
    n: "ArrowExpr"
    times: int = 1

    def __post_init__(self):
        if self.polygon < 3:
            raise ValueError(f"polygon must have at least 3 sides, got {self.polygon}")
        if self.times < 0:
            raise ValueError("iteration count must be >= 0")


ArrowExpr = Union[Lit, Arrow, GenArrow, SM]


def lit(x) -> ArrowExpr:
    """Coerce an int to ``Lit``; pass expressions through."""
    if isinstance(x, int):
        return Lit(x)
    return x


def _atom(e: ArrowExpr) -> str:
    s = render(e)
    if isinstance(e, Arrow):
        return f"({s})"
    return s


def render(e: ArrowExpr) -> str:
    """ASCII rendering; ``parse_expr(render(e)) == e``."""
    if isinstance(e, Lit):
        return str(e.value)
    if isinstance(e, Arrow):
        op = "^" * e.k if e.k >= 1 else f"[{e.k}]"
        # right operand needs no brackets: chains associate to the right
        return f"{_atom(e.a)}{op}{render(e.b)}"
    if isinstance(e, GenArrow):
        return f"expand({render(e.a)}, {render(e.b)}, {e.k}, {render(e.c)})"
    if isinstance(e, SM):
        rep = "" if e.times == 1 else f"^{e.times}"
        return f"SM[{e.polygon}]{rep}({render(e.n)})"
    raise TypeError(f"not an expression: {e!r}")


def normalize(e: ArrowExpr) -> ArrowExpr:
    """Apply the trivial-tower identities bottom-up.

    For ``k >= 1``: ``1^k x -> 1``, ``x^k 0 -> 1``, ``x^k 1 -> x`` and
    ``2^k 2 -> 4``. Levels below 1 are left alone.
    """
    if isinstance(e, Lit):
        return e
    if isinstance(e, Arrow):
        a, b = normalize(e.a), normalize(e.b)
        if e.k >= 1:
            if a == Lit(1) or b == Lit(0):
                return Lit(1)
            if b == Lit(1):
                return a
            if a == Lit(2) and b == Lit(2):
                return Lit(4)
        return Arrow(a, b, e.k)
    if isinstance(e, GenArrow):
        b = normalize(e.b)
        if b == Lit(0):
            return normalize(e.c)
        return GenArrow(normalize(e.a), b, e.k, normalize(e.c))
    if isinstance(e, SM):
        if e.times == 0:
            return normalize(e.n)
        return SM(e.polygon, normalize(e.n), e.times)
    raise TypeError(f"not an expression: {e!r}")


EXACT_EVAL = "exact-eval"
LOG_COMPARE = "log-compare"
STRUCTURAL = "structural-lemma"


@dataclass(frozen=True)
class BoundCertificate:
    """A checked inequality ``lhs relation rhs``.

    ``relation`` is ``"<="`` or ``"<"``; ``method`` is one of
    ``exact-eval``, ``log-compare`` or ``structural-lemma``. ``note``
    names the argument used.
    """

    lhs: ArrowExpr
    rhs: ArrowExpr
    relation: str
    method: str
    verified: bool
    note: str = ""

    def __post_init__(self):
        if self.relation not in ("<=", "<"):
            raise ValueError(f"bad relation {self.relation!r}")
        if self.method not in (EXACT_EVAL, LOG_COMPARE, STRUCTURAL):
            raise ValueError(f"bad method {self.method!r}")

    def to_record(self) -> str:
        return "\t".join(
            [
                "CERT",
                self.relation,
                render(self.lhs),
                render(self.rhs),
                self.method,
                "true" if self.verified else "false",
            ]
        )

    def __str__(self):
        tail = f"  [{self.method}{'; ' + self.note if self.note else ''}]"
        mark = "" if self.verified else " (unverified)"
        return f"{render(self.lhs)} {self.relation} {render(self.rhs)}{tail}{mark}"
