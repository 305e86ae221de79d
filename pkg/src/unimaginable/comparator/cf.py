"""Continued fractions of ``ln B / ln A`` with certified coefficients.

Coefficients come from an interval enclosure of the remainder. One is
emitted only when every point of the enclosure has the same floor;
otherwise the whole expansion is redone at twice the working precision,
up to ``max_bits``, after which the result is flagged as truncated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from ..interval import Interval, bits_for_digits

__all__ = [
    "Convergent",
    "CFResult",
    "PowerRatioBounds",
    "log_ratio",
    "log_ratio_cf",
    "convergents_from",
    "dirichlet_holds",
    "power_ratio_bounds",
    "undistinguishable_check",
]

DEFAULT_DIGITS = 50
MAX_BITS = 1 << 16


@dataclass(frozen=True)
class Convergent:
    """Approximant ``num / den`` of ``ln B / ln A``.

    ``num`` pairs with the exponent of ``A`` and ``den`` with that of ``B``:
    ``A^num`` is close to ``B^den``.
    """

    num: int
    den: int

    def __post_init__(self):
        if self.den <= 0 or gcd(self.num, self.den) != 1:
            raise ValueError(f"{self.num}/{self.den} is not in lowest terms")

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def __str__(self):
        return f"{self.num}/{self.den}"


@dataclass
class CFResult:
    coefficients: list
    convergents: list
    truncated: bool = False
    rational: bool = False
    working_bits: int = 0
    enclosure: Interval = field(default=None, repr=False)


def convergents_from(coefficients) -> list:
    h0, h1 = 0, 1
    k0, k1 = 1, 0
    out = []
    for a in coefficients:
        h0, h1 = h1, a * h1 + h0
        k0, k1 = k1, a * k1 + k0
        out.append(Convergent(h1, k1))
    return out


def _iroot(n: int, e: int) -> int:
    """floor(n ** (1/e)) for n >= 0."""
    if n < 2:
        return n
    x = 1 << -(-n.bit_length() // e)
    while True:
        y = ((e - 1) * x + n // x ** (e - 1)) // e
        if y >= x:
            return x
        x = y


def _primitive_root(n: int) -> tuple[int, int]:
    """``(r, e)`` with ``n = r**e`` and ``e`` maximal."""
    for e in range(n.bit_length(), 1, -1):
        r = _iroot(n, e)
        if r > 1 and r**e == n:
            root, inner = _primitive_root(r)
            return root, inner * e
    return n, 1


def log_ratio(a: int, b: int, bits: int) -> Interval:
    return Interval.from_int(b, bits).log() / Interval.from_int(a, bits).log()


def _rational_ratio(a: int, b: int) -> Fraction | None:
    ra, ea = _primitive_root(a)
    rb, eb = _primitive_root(b)
    return Fraction(eb, ea) if ra == rb else None


def _cf_of_fraction(q: Fraction) -> list:
    out = []
    p, r = q.numerator, q.denominator
    while r:
        a, rem = divmod(p, r)
        out.append(a)
        p, r = r, rem
    return out


def _expand(x: Interval, n_terms: int) -> tuple[list, bool]:
    coeffs = []
    for _ in range(n_terms):
        a = x.floor()
        if a is None:
            return coeffs, False
        coeffs.append(a)
        if len(coeffs) == n_terms:
            break
        frac = x - a
        if not frac.positive():
            return coeffs, False
        x = 1 / frac
    return coeffs, True


def log_ratio_cf(a: int, b: int, n_terms: int = 15, precision: int = DEFAULT_DIGITS, max_bits: int = MAX_BITS) -> CFResult:
    """First ``n_terms`` coefficients of ``ln b / ln a`` and their convergents."""
    if a < 2 or b < 2:
        raise ValueError("both arguments must be >= 2")
    if n_terms < 1:
        raise ValueError("need at least one term")
    exact = _rational_ratio(a, b)
    if exact is not None:
        coeffs = _cf_of_fraction(exact)[:n_terms]
        return CFResult(coeffs, convergents_from(coeffs), rational=True)
    bits = bits_for_digits(precision)
    while True:
        x = log_ratio(a, b, bits)
        coeffs, complete = _expand(x, n_terms)
        if complete:
            return CFResult(coeffs, convergents_from(coeffs), working_bits=bits, enclosure=x)
        if bits >= max_bits:
            return CFResult(coeffs, convergents_from(coeffs), truncated=True, working_bits=bits, enclosure=x)
        bits *= 2


def dirichlet_holds(a: int, b: int, conv: Convergent, bits: int = 256) -> bool:
    """Certified ``|num/den - x| < 1/(num*den)`` for ``x = ln b / ln a``."""
    if conv.num == 0:
        return False
    x = log_ratio(a, b, bits)
    diff = Interval.from_fraction(conv.fraction, bits) - x
    bound = Fraction(1, conv.num * conv.den)
    return diff.lt(bound) and diff.gt(-bound)


def _check_convergent(a: int, b: int, conv: Convergent):
    terms = 4
    while True:
        res = log_ratio_cf(a, b, terms, precision=max(DEFAULT_DIGITS, 4 * len(str(conv.den))))
        for c in res.convergents:
            if c == conv:
                return
            if c.den > conv.den:
                raise ValueError(f"{conv} is not a convergent of ln {b} / ln {a}")
        if res.rational or res.truncated:
            raise ValueError(f"{conv} is not a convergent of ln {b} / ln {a}")
        terms *= 2


@dataclass
class PowerRatioBounds:
    """Enclosures around ``a^num / b^den``.

    ``holds`` reports whether ``|ln(a^num / b^den)| < ln a / num`` was
    certified. That bound can fail: at 16785921/10590737 for (2, 3) the
    log ratio is about -5.23e-8 against 4.13e-8. ``holds_den`` checks the
    classical bound ``ln a / den``, which every convergent satisfies.
    """

    epsilon: Interval  # ln a / num
    log_ratio: Interval  # ln(a^num / b^den)
    holds: bool
    epsilon_den: Interval = None  # ln a / den
    holds_den: bool = False

    @property
    def epsilon_upper(self) -> Fraction:
        return self.epsilon.upper_fraction()

    @property
    def lower(self) -> Interval:
        return (-self.epsilon).exp()

    @property
    def upper(self) -> Interval:
        return self.epsilon.exp()


def power_ratio_bounds(a: int, b: int, conv: Convergent, bits: int = 256) -> PowerRatioBounds:
    """Enclose ``ln(a^num / b^den)`` and compare it with ``ln a / num``."""
    _check_convergent(a, b, conv)
    if conv.num == 0:
        raise ValueError("numerator must be positive")
    la = Interval.from_int(a, bits).log()
    lb = Interval.from_int(b, bits).log()
    eps = la / conv.num
    eps_den = la / conv.den
    lr = la * conv.num - lb * conv.den
    return PowerRatioBounds(
        eps,
        lr,
        lr.lt(eps) and lr.gt(-eps),
        eps_den,
        lr.lt(eps_den) and lr.gt(-eps_den),
    )


def undistinguishable_check(a: int, b: int, conv: Convergent, k: int, bits: int = 128) -> bool:
    """Certified ``num > ln a * 2 * 10^(k+1)``; a tie counts as failure."""
    if k < 2:
        raise ValueError("k must be at least 2")
    while True:
        threshold = Interval.from_int(a, bits).log() * (2 * 10 ** (k + 1))
        if threshold.lt(conv.num):
            return True
        if threshold.gt(conv.num) or bits >= MAX_BITS:
            return False
        # enclosure straddles num
        bits *= 2
