"""Certified comparison of numbers too large to write down."""

from .bounds import (
    UNRESOLVED,
    compare_expr,
    mega_bounds,
    megiston_bounds,
    sm_bound_certificates,
    tower_lemma_check,
)
from .cf import (
    CFResult,
    Convergent,
    PowerRatioBounds,
    dirichlet_holds,
    log_ratio_cf,
    power_ratio_bounds,
    undistinguishable_check,
)
from .scinot import PrecisionExhausted, SciNotation, digit_count, rounded_agreement, sci_notation
from .tower import Tower, tower_cmp

__all__ = [
    "UNRESOLVED",
    "compare_expr",
    "mega_bounds",
    "megiston_bounds",
    "sm_bound_certificates",
    "tower_lemma_check",
    "CFResult",
    "Convergent",
    "PowerRatioBounds",
    "dirichlet_holds",
    "log_ratio_cf",
    "power_ratio_bounds",
    "undistinguishable_check",
    "PrecisionExhausted",
    "SciNotation",
    "digit_count",
    "rounded_agreement",
    "sci_notation",
    "Tower",
    "tower_cmp",
]
