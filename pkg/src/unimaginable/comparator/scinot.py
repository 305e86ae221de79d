"""Certified scientific notation and decimal digit counts of ``base^exponent``.

Both work in log space: ``exponent * log10(base)`` is enclosed in an
interval whose integer part is the decimal exponent and whose fractional
part gives the mantissa. Digits are truncated, not rounded, and a digit is
reported only when every point of the enclosure agrees on it.

``sig_digits`` counts mantissa digits after the decimal point, so seven
digits of ``2^16785921`` read ``5.3191952``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ..interval import Interval

__all__ = [
    "SciNotation",
    "PrecisionExhausted",
    "sci_notation",
    "digit_count",
    "rounded_agreement",
]

EXACT_DIGITS = 4000  # below this many digits the power is computed outright
MAX_SIG_DIGITS = 1000
MAX_BITS = 1 << 20


class PrecisionExhausted(ArithmeticError):
    def __init__(self, required_bits: int):
        self.required_bits = required_bits
        super().__init__(f"certification needs more than {required_bits} bits of working precision")


@dataclass(frozen=True)
class SciNotation:
    mantissa_digits: str  # leading digit first, no decimal point
    exponent10: int
    certified_digits: int  # digits after the point that are guaranteed
    error_bound: Fraction  # relative error of the truncated mantissa

    def __post_init__(self):
        if not self.mantissa_digits or self.mantissa_digits[0] == "0":
            raise ValueError("mantissa must start with a nonzero digit")
        if self.certified_digits > len(self.mantissa_digits):
            raise ValueError("more certified digits than mantissa digits")

    @property
    def mantissa(self) -> Fraction:
        return Fraction(int(self.mantissa_digits), 10 ** (len(self.mantissa_digits) - 1))

    def __str__(self):
        m = self.mantissa_digits
        body = m[0] + ("." + m[1:] if len(m) > 1 else "")
        return f"{body}e{self.exponent10} (±{self.certified_digits} certified)"


def _valuation(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def _size(base: int, exponent: int) -> float:
    """``exponent * log10(base)``, or infinity when the exponent is huge."""
    if base == 1:
        return 0.0
    if exponent.bit_length() > 1000:
        return math.inf
    return exponent * math.log10(base)


def _reduced_digits(base: int, exponent: int) -> float:
    """Approximate digit count of ``base^exponent`` with trailing zeros removed."""
    t = min(_valuation(base, 2), _valuation(base, 5))
    return _size(base // 10**t, exponent) + 1


def _exact(base: int, exponent: int, sig_digits: int) -> SciNotation:
    t = min(_valuation(base, 2), _valuation(base, 5))
    # the reduced base lacks a factor 2 or 5, so its powers end in no zeros
    s = str((base // 10**t) ** exponent)
    exp10 = len(s) - 1 + t * exponent
    head = s[: sig_digits + 1]
    rest = s[sig_digits + 1 :].strip("0")
    err = Fraction(1, int(head)) if rest else Fraction(0)
    return SciNotation(head.ljust(sig_digits + 1, "0"), exp10, sig_digits, err)


def _log10_enclosure(base: int, exponent: int, bits: int) -> Interval:
    return Interval.from_int(base, bits).log10() * exponent


def _start_bits(base: int, exponent: int, digits: int) -> int:
    # integer part of the log plus the requested digits plus guard bits
    mag = max(1, exponent * max(1, base.bit_length())).bit_length()
    return mag + int(digits * 3.33) + 32


def sci_notation(
    base: int,
    exponent: int,
    sig_digits: int,
    precision: int | None = None,
    start_bits: int | None = None,
) -> SciNotation:
    """Mantissa of ``base^exponent`` with ``sig_digits`` certified decimals.

    ``precision`` caps the working precision in bits; by default it is
    raised as needed up to a large internal limit. ``start_bits`` forces
    the first attempt's precision (powers small enough to compute exactly
    ignore both).
    """
    if base < 2:
        raise ValueError("base must be >= 2")
    if exponent < 0:
        raise ValueError("exponent must be >= 0")
    if not 1 <= sig_digits <= MAX_SIG_DIGITS:
        raise ValueError(f"digits must be in 1..{MAX_SIG_DIGITS}")
    if _reduced_digits(base, exponent) <= EXACT_DIGITS:
        return _exact(base, exponent, sig_digits)
    cap = precision or MAX_BITS
    bits = min(start_bits or _start_bits(base, exponent, sig_digits), cap)
    scale = 10**sig_digits
    while True:
        lg = _log10_enclosure(base, exponent, bits)
        e10 = lg.floor()
        if e10 is not None:
            head = ((lg - e10).exp10() * scale).floor()
            if head is not None:
                return SciNotation(str(head), e10, sig_digits, Fraction(1, head))
        if bits >= cap:
            raise PrecisionExhausted(bits * 2)
        bits = min(bits * 2, cap)


def digit_count(base: int, exponent: int) -> int:
    """Number of decimal digits of ``base^exponent``."""
    if base < 2:
        raise ValueError("base must be >= 2")
    if exponent < 0:
        raise ValueError("exponent must be >= 0")
    if exponent == 0:
        return 1
    t = _valuation(base, 10)
    if base == 10**t:
        return t * exponent + 1
    if _size(base, exponent) < EXACT_DIGITS:
        return len(str(base**exponent))
    # not a power of ten, so the log is irrational and widening terminates
    bits = _start_bits(base, exponent, 4)
    while True:
        f = _log10_enclosure(base, exponent, bits).floor()
        if f is not None:
            return f + 1
        bits *= 2


def rounded_agreement(x: SciNotation, y: SciNotation) -> int:
    """Largest ``k`` such that ``x`` and ``y`` round to the same ``k`` significant digits.

    Rounding to ``k`` digits is decided by digit ``k+1`` of a truncated
    mantissa, so ``k`` stops one short of the certified length.
    """
    if x.exponent10 != y.exponent10:
        return 0
    limit = min(x.certified_digits, y.certified_digits) + 1
    best = 0
    for k in range(1, limit):
        if _round(x, k) != _round(y, k):
            break
        best = k
    return best


def _round(s: SciNotation, k: int) -> int:
    m = s.mantissa_digits.ljust(k + 1, "0")
    head = int(m[:k])
    return head + (m[k] >= "5")
