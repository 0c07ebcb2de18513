"""Rigorous dyadic interval enclosures.

An :class:`Interval` is ``[lo / 2**prec, hi / 2**prec]`` with integer
endpoints, so sums and products are exact and the only rounding happens in
:func:`sqrt_enclosure`, where the lower end is floored and the upper end
ceiled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

MIN_PRECISION = 16


def _log2_dyadic(x: int, prec: int, direction: float) -> float:
    """log2(x / 2**prec) for positive ``x``, rounded toward ``direction`` unless exact."""
    if x & (x - 1) == 0:
        return float(x.bit_length() - 1 - prec)
    # x = 2**e * t with t in [1, 2); the division is correctly rounded, so
    # log2(t) is off by well under 2**-50, and the final sum adds one ulp
    e = x.bit_length() - 1
    v = (e - prec) + math.log2(x / (1 << e))
    slack = 2.0**-50 + math.ulp(v)
    return math.nextafter(v + math.copysign(slack, direction), direction)


@dataclass(frozen=True)
class Interval:
    lo: int
    hi: int
    prec: int = 0

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def exact(cls, value: int) -> "Interval":
        return cls(value, value, 0)

    def _at(self, prec: int) -> tuple[int, int]:
        shift = prec - self.prec
        return self.lo << shift, self.hi << shift

    def __add__(self, other: "Interval") -> "Interval":
        p = max(self.prec, other.prec)
        a, b = self._at(p)
        c, d = other._at(p)
        return Interval(a + c, b + d, p)

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo, self.prec)

    def __sub__(self, other: "Interval") -> "Interval":
        return self + (-other)

    def scale(self, c: int) -> "Interval":
        if c >= 0:
            return Interval(c * self.lo, c * self.hi, self.prec)
        return Interval(c * self.hi, c * self.lo, self.prec)

    def __mul__(self, other: "Interval") -> "Interval":
        ends = [x * y for x in (self.lo, self.hi) for y in (other.lo, other.hi)]
        return Interval(min(ends), max(ends), self.prec + other.prec)

    @property
    def lower(self) -> Fraction:
        return Fraction(self.lo, 1 << self.prec)

    @property
    def upper(self) -> Fraction:
        return Fraction(self.hi, 1 << self.prec)

    @property
    def width(self) -> Fraction:
        return Fraction(self.hi - self.lo, 1 << self.prec)

    def midpoint(self) -> Fraction:
        return Fraction(self.lo + self.hi, 1 << (self.prec + 1))

    def log2_width(self) -> float:
        w = self.hi - self.lo
        if w == 0:
            return -math.inf
        return _log2_dyadic(w, self.prec, math.inf)

    def contains(self, value) -> bool:
        return self.lower <= value <= self.upper

    def contains_interval(self, other: "Interval") -> bool:
        p = max(self.prec, other.prec)
        a, b = self._at(p)
        c, d = other._at(p)
        return a <= c and d <= b

    def intersects(self, other: "Interval") -> bool:
        p = max(self.prec, other.prec)
        a, b = self._at(p)
        c, d = other._at(p)
        return a <= d and c <= b

    def below(self, other: "Interval") -> bool:
        """True when every point of ``self`` is strictly less than every point of ``other``."""
        p = max(self.prec, other.prec)
        return self._at(p)[1] < other._at(p)[0]

    def excludes_zero(self) -> bool:
        return self.lo > 0 or self.hi < 0

    def sign(self) -> int:
        """+1 or -1 when the sign is certain, 0 when the interval straddles zero."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        return 0

    def abs(self) -> "Interval":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Interval(0, max(-self.lo, self.hi), self.prec)

    def log2_bounds(self) -> tuple[float, float]:
        """Outward-rounded ``(log2 lower, log2 upper)`` of a positive interval."""
        if self.lo <= 0:
            raise ValueError("log2 of an interval that is not strictly positive")
        return (
            _log2_dyadic(self.lo, self.prec, -math.inf),
            _log2_dyadic(self.hi, self.prec, math.inf),
        )


def check_precision(precision_bits: int) -> None:
    if precision_bits < MIN_PRECISION:
        raise ValueError(f"precision_bits must be >= {MIN_PRECISION}, got {precision_bits}")


def sqrt_enclosure(a: int, prec: int) -> Interval:
    """Enclose ``sqrt(a)`` between consecutive multiples of ``2**-prec``.

    Exact (zero width) when ``a`` is a perfect square.
    """
    if a < 0:
        raise ValueError(f"square root of negative {a}")
    scaled = a << (2 * prec)
    r = math.isqrt(scaled)
    if r * r == scaled:
        return Interval(r, r, prec)
    return Interval(r, r + 1, prec)
