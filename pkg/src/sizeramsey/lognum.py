"""Signed numbers stored as natural-log magnitudes.

The magnitudes in the bound chain reach ``exp(10^440)`` and beyond, so the
log magnitude itself is an ``mpmath.mpf`` (53-bit mantissa, unbounded
exponent) rather than a float.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering

import mpmath
from mpmath import mpf

LN10 = mpmath.log(10)
# math.exp overflows just above this
FLOAT_LOG_LIMIT = 709.0
EXACT_LOG_FACTORIAL_MAX = 1 << 20


@total_ordering
class LogNumber:
    __slots__ = ("sign", "log_mag")

    def __init__(self, sign: int, log_mag=0):
        if sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or 1, got {sign}")
        self.sign = sign
        self.log_mag = mpf(0) if sign == 0 else mpf(log_mag)

    @classmethod
    def zero(cls) -> LogNumber:
        return cls(0)

    @classmethod
    def from_log(cls, log_mag) -> LogNumber:
        return cls(1, log_mag)

    @classmethod
    def from_value(cls, x: int | float | Fraction) -> LogNumber:
        if x == 0:
            return cls(0)
        sign = 1 if x > 0 else -1
        x = abs(x)
        if isinstance(x, Fraction):
            return cls(sign, log_int(x.numerator) - log_int(x.denominator))
        if isinstance(x, int):
            return cls(sign, log_int(x))
        return cls(sign, mpmath.log(mpf(x)))

    @property
    def log10(self):
        """Base-10 log of the magnitude (a float when it fits)."""
        if self.sign == 0:
            return float("-inf")
        value = self.log_mag / LN10
        return float(value) if abs(value) < 1e300 else value

    def to_float(self) -> float:
        if self.sign == 0:
            return 0.0
        if self.log_mag > FLOAT_LOG_LIMIT:
            raise OverflowError(f"exp({mpmath.nstr(self.log_mag, 8)}) does not fit in a float")
        return self.sign * math.exp(float(self.log_mag))

    def __mul__(self, other: LogNumber) -> LogNumber:
        if self.sign == 0 or other.sign == 0:
            return LogNumber.zero()
        return LogNumber(self.sign * other.sign, self.log_mag + other.log_mag)

    def __truediv__(self, other: LogNumber) -> LogNumber:
        if other.sign == 0:
            raise ZeroDivisionError("division by a zero LogNumber")
        if self.sign == 0:
            return LogNumber.zero()
        return LogNumber(self.sign * other.sign, self.log_mag - other.log_mag)

    def __pow__(self, exponent) -> LogNumber:
        """Real power of a positive number, or integer power of any number."""
        if self.sign == 0:
            if exponent <= 0:
                raise ZeroDivisionError("0 raised to a non-positive power")
            return LogNumber.zero()
        if self.sign < 0:
            if not isinstance(exponent, int):
                raise ValueError("non-integer power of a negative LogNumber")
            sign = -1 if exponent % 2 else 1
        else:
            sign = 1
        return LogNumber(sign, self.log_mag * mpf(exponent))

    def __neg__(self) -> LogNumber:
        return LogNumber(-self.sign, self.log_mag)

    def __add__(self, other: LogNumber) -> LogNumber:
        if self.sign == 0:
            return other
        if other.sign == 0:
            return self
        big, small = (self, other) if self.log_mag >= other.log_mag else (other, self)
        delta = small.log_mag - big.log_mag  # <= 0
        if big.sign == small.sign:
            return LogNumber(big.sign, big.log_mag + mpmath.log1p(mpmath.exp(delta)))
        if delta == 0:
            return LogNumber.zero()
        return LogNumber(big.sign, big.log_mag + mpmath.log(-mpmath.expm1(delta)))

    def __sub__(self, other: LogNumber) -> LogNumber:
        return self + (-other)

    def _key(self):
        if self.sign == 0:
            return (0, mpf(0))
        return (self.sign, self.sign * self.log_mag)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LogNumber):
            return NotImplemented
        return self._key() == other._key()

    def __lt__(self, other: LogNumber) -> bool:
        return self._key() < other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        if self.sign == 0:
            return "LogNumber(0)"
        return f"LogNumber({'+' if self.sign > 0 else '-'}exp({mpmath.nstr(self.log_mag, 12)}))"


ONE = LogNumber(1, 0)


def log_int(x: int):
    """Natural log of a positive (possibly huge) integer as an mpf."""
    if x <= 0:
        raise ValueError(f"log of non-positive integer {x}")
    return mpmath.log(mpf(x)) if x.bit_length() > 1000 else mpf(math.log(x))


def log_factorial(m: int):
    """ln(m!), exact summation up to 2^20 and Stirling's series beyond."""
    if m < 0:
        raise ValueError(f"factorial of negative integer {m}")
    if m <= EXACT_LOG_FACTORIAL_MAX:
        return mpf(math.fsum(math.log(i) for i in range(2, m + 1)))
    # truncation error of this series is below 1/(1680 m^7) < 1e-44
    x = mpf(m)
    return (x * mpmath.log(x) - x + mpmath.log(2 * mpmath.pi * x) / 2
            + 1 / (12 * x) - 1 / (360 * x**3) + 1 / (1260 * x**5))


def log_binomial(n: int, r: int):
    """ln C(n, r) for 0 <= r <= n; ``n`` may be astronomically large."""
    if not 0 <= r <= n:
        raise ValueError(f"binomial C({n}, {r}) undefined")
    r = min(r, n - r)
    if r == 0:
        return mpf(0)
    if r <= 4096:
        return mpf(math.fsum(float(log_int(n - j)) for j in range(r))) - log_factorial(r)
    # sum_{j<r} log(1 - j/n) ~ -r(r-1)/(2n) - r^3/(6n^2); usable when r^2 << n
    if 3 * r.bit_length() + 100 < 2 * n.bit_length():
        correction = -mpf(r) * (r - 1) / (2 * mpf(n))
        return mpf(r) * log_int(n) + correction - log_factorial(r)
    with mpmath.workprec(max(64, n.bit_length() + 64)):
        value = mpmath.loggamma(mpf(n) + 1) - mpmath.loggamma(mpf(r) + 1) - mpmath.loggamma(mpf(n - r) + 1)
    return +value
