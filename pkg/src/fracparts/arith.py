"""Number-theoretic primitives: divisor sums, Dedekind sums, Kloosterman sums.

The divisor-sum table feeds every recursion in the package.  Dedekind sums
s(h,k) use the sawtooth convention

    s(h,k) = sum_{r=1}^{k-1} ((r/k)) ((h r/k)),   ((x)) = x - floor(x) - 1/2
                                                  (0 when x is an integer),

computed as exact rationals either by the O(k) definition or, for large k,
by reciprocity descent.  The twisted exponential sums

    A_{k,a}(n,m) = sum_{0<=h<k, gcd(h,k)=1}
                   exp(pi i a s(h,k) + (2 pi i / k)(m hbar - n) h)

are returned as rigorous real/imaginary interval enclosures; the phase of
each summand is reduced to an exact rational multiple of pi before the
sine/cosine enclosures are taken, so the only error is outward rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy
from mpmath import iv

from .ivutil import iv_endpoints, local_prec, to_iv

# k up to this size uses the O(k) sawtooth sum; larger k descends via
# reciprocity (O(log k) steps on growing rationals)
_DEDEKIND_DIRECT_LIMIT = 10_000


@dataclass(frozen=True)
class SigmaTable:
    """Divisor sums sigma(1..limit); index 0 is a zero sentinel."""

    limit: int
    values: Sequence[int]

    def __post_init__(self):
        if self.limit < 1:
            raise ValueError("sigma table limit must be >= 1")
        if len(self.values) != self.limit + 1:
            raise ValueError("values must cover 0..limit")

    def __getitem__(self, ell: int) -> int:
        if not 1 <= ell <= self.limit:
            raise IndexError("sigma index out of range: %d" % ell)
        return self.values[ell]


def sigma_sieve(limit: int) -> SigmaTable:
    """Divisor-sum table via an additive sieve, O(limit log limit)."""
    if limit < 1:
        raise ValueError("sigma_sieve requires limit >= 1")
    acc = numpy.zeros(limit + 1, dtype=numpy.int64)
    for d in range(1, limit + 1):
        acc[d::d] += d
    vals = acc.tolist()
    vals[0] = 0
    return SigmaTable(limit, vals)


def mod_inverse(h: int, k: int) -> int:
    """Inverse of h modulo k, in [0, k); mod_inverse(h, 1) = 0."""
    if k < 1:
        raise ValueError("modulus must be positive")
    if k == 1:
        return 0
    if math.gcd(h, k) != 1:
        raise ValueError("mod_inverse requires gcd(h, k) = 1")
    return pow(h, -1, k)


def _sawtooth(x: Fraction) -> Fraction:
    if x.denominator == 1:
        return Fraction(0)
    return x - (x.numerator // x.denominator) - Fraction(1, 2)


def _dedekind_direct(h: int, k: int) -> Fraction:
    total = Fraction(0)
    for r in range(1, k):
        total += _sawtooth(Fraction(r, k)) * _sawtooth(Fraction(h * r, k))
    return total


def _dedekind_descent(h: int, k: int) -> Fraction:
    # reciprocity: s(h,k) + s(k mod h, h) = -1/4 + (h^2 + k^2 + 1)/(12 h k)
    if h == 0:
        return Fraction(0)
    if k <= _DEDEKIND_DIRECT_LIMIT:
        return _dedekind_direct(h, k)
    rec = Fraction(-1, 4) + Fraction(h * h + k * k + 1, 12 * h * k)
    return rec - _dedekind_descent(k % h, h)


def dedekind_sum(h: int, k: int) -> Fraction:
    """Exact Dedekind sum s(h,k) for 0 <= h < k, gcd(h,k) = 1."""
    if k < 1:
        raise ValueError("k must be positive")
    if not 0 <= h < k:
        raise ValueError("dedekind_sum requires 0 <= h < k")
    if math.gcd(h, k) != 1:
        raise ValueError("dedekind_sum requires gcd(h, k) = 1")
    if k <= _DEDEKIND_DIRECT_LIMIT:
        return _dedekind_direct(h, k)
    return _dedekind_descent(h, k)


@dataclass(frozen=True)
class KloostermanValue:
    """Enclosure of a complex exponential sum with at most k unit terms."""

    k: int
    real: object  # iv.mpf
    imag: object  # iv.mpf

    def modulus_upper(self) -> Fraction:
        """Exact upper bound for |A| from the enclosure endpoints."""
        ra, rb = iv_endpoints(self.real)
        ia, ib = iv_endpoints(self.imag)
        r2 = max(ra * ra, rb * rb) + max(ia * ia, ib * ib)
        # sqrt(num/den) = sqrt(num*den)/den <= ceil(sqrt(num*den))/den
        t = r2.numerator * r2.denominator
        v = math.isqrt(t)
        if v * v < t:
            v += 1
        return Fraction(v, r2.denominator)


def kloosterman(k: int, alpha, n: int, m: int, prec: int = 64) -> KloostermanValue:
    """Enclosure of A_{k,alpha}(n,m).  alpha must be exactly representable
    (int, Fraction, or a float taken at its binary value)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    alpha = Fraction(alpha)
    wp = prec + 8 + 2 * k.bit_length()
    with local_prec(wp):
        if k == 1:
            return KloostermanValue(1, to_iv(1), to_iv(0))
        re = iv.mpf(0)
        im = iv.mpf(0)
        for h in range(k):
            if math.gcd(h, k) != 1:
                continue
            hbar = mod_inverse(h, k)
            # phase / pi as an exact rational, reduced modulo 2
            theta = alpha * dedekind_sum(h, k) + Fraction(2 * (m * hbar - n) * h, k)
            theta %= 2
            ang = iv.pi * to_iv(theta)
            re += iv.cos(ang)
            im += iv.sin(ang)
    return KloostermanValue(k, re, im)
