"""Exact and certified arithmetic on hyperoperation-sized integers."""

from .expr import SM, Arrow, BoundCertificate, GenArrow, Lit, Ordering, normalize, render
from .grammar import ExprParseError, parse_expr
from .hyperop import BudgetExceeded, EvalBudget, Exact, Overflow, arrow, evaluate, gen_arrow, sm

__version__ = "0.1.0"

__all__ = [
    "SM",
    "Arrow",
    "BoundCertificate",
    "GenArrow",
    "Lit",
    "Ordering",
    "normalize",
    "render",
    "ExprParseError",
    "parse_expr",
    "BudgetExceeded",
    "EvalBudget",
    "Exact",
    "Overflow",
    "arrow",
    "evaluate",
    "gen_arrow",
    "sm",
]
