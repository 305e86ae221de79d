"""Outward-rounded real intervals with an explicit working precision.

A thin value type over ``mpmath.libmp.libmpi``. Every operation takes its
precision from the operands (the larger of the two), so no global mpmath
context is read or written.
"""

from __future__ import annotations

import numbers
from fractions import Fraction

from mpmath.libmp import (
    from_int,
    from_rational,
    libmpi,
    mpf_cmp,
    mpf_floor,
    mpf_ceil,
    round_ceiling,
    round_floor,
    to_int,
    to_str,
)

__all__ = ["Interval", "bits_for_digits"]


def bits_for_digits(digits: int) -> int:
    return int(digits * 3.3219280948873626) + 8


class Interval:
    __slots__ = ("lo", "hi", "prec")

    def __init__(self, lo, hi, prec: int):
        self.lo = lo
        self.hi = hi
        self.prec = prec

    # -- construction -----------------------------------------------------

    @classmethod
    def from_int(cls, n: int, prec: int) -> "Interval":
        return cls(from_int(n, prec, round_floor), from_int(n, prec, round_ceiling), prec)

    @classmethod
    def from_fraction(cls, q: Fraction, prec: int) -> "Interval":
        q = Fraction(q)
        return cls(
            from_rational(q.numerator, q.denominator, prec, round_floor),
            from_rational(q.numerator, q.denominator, prec, round_ceiling),
            prec,
        )

    @classmethod
    def ln10(cls, prec: int) -> "Interval":
        return cls.from_int(10, prec).log()

    def _wrap(self, pair, prec):
        return Interval(pair[0], pair[1], prec)

    def _coerce(self, other) -> "Interval":
        if isinstance(other, Interval):
            return other
        if isinstance(other, numbers.Integral):
            return Interval.from_int(int(other), self.prec)
        if isinstance(other, Fraction):
            return Interval.from_fraction(other, self.prec)
        return NotImplemented

    @property
    def _pair(self):
        return (self.lo, self.hi)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        p = max(self.prec, o.prec)
        return self._wrap(libmpi.mpi_add(self._pair, o._pair, p), p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        p = max(self.prec, o.prec)
        return self._wrap(libmpi.mpi_sub(self._pair, o._pair, p), p)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        p = max(self.prec, o.prec)
        return self._wrap(libmpi.mpi_mul(self._pair, o._pair, p), p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if not (o.positive() or o.negative()):
            raise ZeroDivisionError("interval divisor contains zero")
        p = max(self.prec, o.prec)
        return self._wrap(libmpi.mpi_div(self._pair, o._pair, p), p)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __neg__(self):
        return self._wrap(libmpi.mpi_neg(self._pair, self.prec), self.prec)

    def log(self) -> "Interval":
        if not self.positive():
            raise ValueError("log of an interval that is not strictly positive")
        return self._wrap(libmpi.mpi_log(self._pair, self.prec), self.prec)

    def log10(self) -> "Interval":
        return self.log() / Interval.ln10(self.prec)

    def exp(self) -> "Interval":
        return self._wrap(libmpi.mpi_exp(self._pair, self.prec), self.prec)

    def exp10(self) -> "Interval":
        return (self * Interval.ln10(self.prec)).exp()

    # -- queries ----------------------------------------------------------

    def positive(self) -> bool:
        return mpf_cmp(self.lo, from_int(0)) > 0

    def negative(self) -> bool:
        return mpf_cmp(self.hi, from_int(0)) < 0

    def floor(self) -> int | None:
        """``floor(x)`` if it is the same for every point, else ``None``."""
        a = to_int(mpf_floor(self.lo))
        b = to_int(mpf_floor(self.hi))
        return int(a) if a == b else None

    def floor_bounds(self) -> tuple[int, int]:
        return int(to_int(mpf_floor(self.lo))), int(to_int(mpf_ceil(self.hi)))

    def lt(self, other) -> bool:
        """Certainly ``self < other``."""
        o = self._coerce(other)
        return mpf_cmp(self.hi, o.lo) < 0

    def gt(self, other) -> bool:
        o = self._coerce(other)
        return mpf_cmp(self.lo, o.hi) > 0

    def le(self, other) -> bool:
        o = self._coerce(other)
        return mpf_cmp(self.hi, o.lo) <= 0

    def contains(self, other) -> bool:
        o = self._coerce(other)
        return mpf_cmp(self.lo, o.lo) <= 0 and mpf_cmp(o.hi, self.hi) <= 0

    def upper_fraction(self) -> Fraction:
        sign, man, exp, _ = self.hi
        q = Fraction(int(man)) * (Fraction(2) ** exp)
        return -q if sign else q

    def lower_fraction(self) -> Fraction:
        sign, man, exp, _ = self.lo
        q = Fraction(int(man)) * (Fraction(2) ** exp)
        return -q if sign else q

    def lower_str(self, digits: int = 20) -> str:
        return to_str(self.lo, digits)

    def upper_str(self, digits: int = 20) -> str:
        return to_str(self.hi, digits)

    def __repr__(self):
        return f"Interval[{to_str(self.lo, 15)}, {to_str(self.hi, 15)}]"
