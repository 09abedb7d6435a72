"""Rigorous interval enclosures with rational endpoints.

Endpoints are ``Fraction``s rounded outward to dyadic rationals after every
operation, so denominators stay bounded. The transcendental functions use
truncated series with explicit remainder bounds, never floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

DEFAULT_PRECISION = 80  # bits kept after the binary point


def _down(q: Fraction, prec: int) -> Fraction:
    return Fraction(math.floor(q * (1 << prec)), 1 << prec)


def _up(q: Fraction, prec: int) -> Fraction:
    return Fraction(math.ceil(q * (1 << prec)), 1 << prec)


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = Fraction(self.lo), Fraction(self.hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, q) -> Interval:
        return cls(Fraction(q), Fraction(q))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, q) -> bool:
        return self.lo <= q <= self.hi

    def rounded(self, prec: int = DEFAULT_PRECISION) -> Interval:
        return Interval(_down(self.lo, prec), _up(self.hi, prec))

    def __add__(self, other) -> Interval:
        other = _lift(other)
        return Interval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self) -> Interval:
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other) -> Interval:
        return self + (-_lift(other))

    def __rsub__(self, other) -> Interval:
        return _lift(other) - self

    def __mul__(self, other) -> Interval:
        other = _lift(other)
        prods = [a * b for a in (self.lo, self.hi) for b in (other.lo, other.hi)]
        return Interval(min(prods), max(prods))

    __rmul__ = __mul__

    def __truediv__(self, other) -> Interval:
        other = _lift(other)
        if other.lo <= 0 <= other.hi:
            raise ZeroDivisionError("divisor interval contains zero")
        return self * Interval(1 / other.hi, 1 / other.lo)

    def __rtruediv__(self, other) -> Interval:
        return _lift(other) / self

    def sqr(self) -> Interval:
        if self.lo >= 0:
            return Interval(self.lo**2, self.hi**2)
        if self.hi <= 0:
            return Interval(self.hi**2, self.lo**2)
        return Interval(Fraction(0), max(self.lo**2, self.hi**2))

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


def _lift(x) -> Interval:
    return x if isinstance(x, Interval) else Interval.point(x)


# exp -------------------------------------------------------------------------


def _exp_point(q: Fraction, prec: int) -> Interval:
    # exp(q) = exp(q / 2^k)^(2^k) with |q / 2^k| <= 1/2
    k = 0
    while abs(q) > Fraction(1, 2) * (1 << k):
        k += 1
    r = q / (1 << k)
    work = prec + 2 * k + 10
    term, total, j = Fraction(1), Fraction(0), 0
    tol = Fraction(1, 1 << work)
    while True:
        total += term
        j += 1
        term = term * r / j
        if abs(term) < tol:
            break
    # Lagrange remainder: |R| <= |r|^j / j! * e^|r| <= 2 |term|
    rem = 2 * abs(term)
    enc = Interval(_down(total - rem, work), _up(total + rem, work))
    for _ in range(k):
        enc = enc.sqr().rounded(work)
    return enc.rounded(prec)


def exp(x, prec: int = DEFAULT_PRECISION) -> Interval:
    """An interval containing exp(y) for every y in x."""
    x = _lift(x)
    return Interval(_exp_point(x.lo, prec).lo, _exp_point(x.hi, prec).hi)


# log -------------------------------------------------------------------------


def _artanh_series(z: Fraction, work: int) -> Interval:
    # artanh z = sum z^(2j+1)/(2j+1); tail after the last term is at most
    # |z|^(2N+3) / ((2N+3)(1 - z^2))
    if not abs(z) < 1:
        raise ValueError("series needs |z| < 1")
    tol = Fraction(1, 1 << work)
    z2 = z * z
    power, total, m = z, Fraction(0), 1
    while True:
        total += power / m
        power *= z2
        m += 2
        tail = abs(power) / (m * (1 - z2))
        if tail < tol:
            break
    return Interval(_down(total - tail, work), _up(total + tail, work))


def _log_point(q: Fraction, prec: int) -> Interval:
    if q <= 0:
        raise ValueError("log needs a positive argument")
    if q == 1:
        return Interval.point(0)
    # q = m * 2^k with m in [2/3, 4/3)
    k = q.numerator.bit_length() - q.denominator.bit_length()
    m = q / Fraction(2) ** k
    while m >= Fraction(4, 3):
        m /= 2
        k += 1
    while m < Fraction(2, 3):
        m *= 2
        k -= 1
    work = prec + abs(k).bit_length() + 10
    log_m = 2 * _artanh_series((m - 1) / (m + 1), work)
    log2 = 2 * _artanh_series(Fraction(1, 3), work)
    return (log_m + k * log2).rounded(prec)


def log(x, prec: int = DEFAULT_PRECISION) -> Interval:
    """An interval containing log(y) for every y in x (x must be positive)."""
    x = _lift(x)
    return Interval(_log_point(x.lo, prec).lo, _log_point(x.hi, prec).hi)


# sqrt ------------------------------------------------------------------------


def sqrt(x, prec: int = DEFAULT_PRECISION) -> Interval:
    x = _lift(x)
    if x.lo < 0:
        raise ValueError("sqrt needs a non-negative interval")
    scale = 1 << prec
    lo = Fraction(math.isqrt(math.floor(x.lo * scale * scale)), scale)
    c = math.ceil(x.hi * scale * scale)
    hi_int = math.isqrt(c)
    hi = Fraction(hi_int if hi_int * hi_int == c else hi_int + 1, scale)
    return Interval(lo, hi)
