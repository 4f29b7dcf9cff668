"""Exact computation of fractional partition numbers and inequality defects.

The central recursion, for rational a > 0,

    p_a(n) = (a/n) * sum_{l=1}^{n} sigma(l) p_a(n-l),      p_a(0) = 1,

is carried in exact arithmetic: big integers for integer a (with an
integrality assertion at every step, which catches recursion bugs
immediately) and Fractions otherwise.  The same recursion executed over
the polynomial ring yields p_a(n) as a polynomial in a.

Defect scans implement the two product inequalities under study:
log-concavity p(n)^2 >= p(n-1) p(n+1) and the two-parameter variant
p(n-1) p(l+1) >= p(n) p(l).  All comparisons cross-multiply; no division.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from operator import mul
from typing import Sequence

import gmpy2

from .arith import sigma_sieve
from .polynomials import RationalPolynomial


@dataclass(frozen=True)
class PartitionSequence:
    """Exact values p_alpha(0..limit)."""

    alpha: Fraction
    limit: int
    values: Sequence  # ints (gmpy2.mpz) for integer alpha, else Fractions

    def __getitem__(self, n: int):
        return self.values[n]

    def __len__(self) -> int:
        return self.limit + 1


def exact_sequence(alpha, limit: int) -> PartitionSequence:
    """p_alpha(n) for 0 <= n <= limit by the sigma recursion."""
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if limit < 0:
        raise ValueError("limit must be >= 0")
    if limit == 0:
        one = gmpy2.mpz(1) if alpha.denominator == 1 else Fraction(1)
        return PartitionSequence(alpha, 0, [one])

    sigma = sigma_sieve(limit).values
    # sigrev[j] = sigma(limit - j); the step-n dot product pairs
    # p[0..n-1] with sigma(n), sigma(n-1), ..., sigma(1)
    sigrev = sigma[1:][::-1]

    if alpha.denominator == 1:
        k = alpha.numerator
        p = [gmpy2.mpz(1)]
        for n in range(1, limit + 1):
            s = sum(map(mul, p, sigrev[limit - n:]))
            num = k * s
            q, r = divmod(num, n)
            if r:
                raise AssertionError(
                    "integrality violated at n=%d (recursion bug)" % n)
            p.append(q)
        return PartitionSequence(alpha, limit, p)

    p = [Fraction(1)]
    for n in range(1, limit + 1):
        s = sum(map(mul, p, sigrev[limit - n:]))
        p.append(alpha * s / n)
    return PartitionSequence(alpha, limit, p)


def convolve(a: PartitionSequence, b: PartitionSequence) -> PartitionSequence:
    """Coefficient-wise product of the generating functions; the result is
    the sequence for alpha = a.alpha + b.alpha, truncated to the shorter."""
    limit = min(a.limit, b.limit)
    av, bv = a.values, b.values
    out = [sum(av[i] * bv[n - i] for i in range(n + 1)) for n in range(limit + 1)]
    alpha = a.alpha + b.alpha
    if alpha.denominator == 1:
        out = [gmpy2.mpz(v) for v in out]
    return PartitionSequence(alpha, limit, out)


@lru_cache(maxsize=None)
def _partition_polynomials(n: int) -> tuple[RationalPolynomial, ...]:
    sigma = sigma_sieve(max(n, 1)).values
    polys = [RationalPolynomial.constant(1)]
    for j in range(1, n + 1):
        acc = RationalPolynomial(())
        for ell in range(1, j + 1):
            acc = acc + polys[j - ell].scale(sigma[ell])
        # multiply by the symbol (the recursion's alpha factor), divide by j
        polys.append(acc.shift_up().scale(Fraction(1, j)))
    return tuple(polys)


def partition_polynomial(n: int) -> RationalPolynomial:
    """p_alpha(n) as a polynomial in alpha (degree n, leading coeff 1/n!)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return _partition_polynomials(n)[n]


@dataclass(frozen=True)
class DefectReport:
    alpha: Fraction
    n: int
    ell: int
    defect: Fraction
    sign: str  # negative | zero | positive


def _sign_of(x) -> str:
    if x < 0:
        return "negative"
    if x == 0:
        return "zero"
    return "positive"


def cft_defect(alpha, n: int, ell: int) -> DefectReport:
    """Exact defect p(n-1)p(l+1) - p(n)p(l) of the product inequality."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if ell < 0:
        raise ValueError("ell must be >= 0")
    alpha = Fraction(alpha)
    seq = exact_sequence(alpha, max(n, ell + 1))
    d = seq[n - 1] * seq[ell + 1] - seq[n] * seq[ell]
    return DefectReport(alpha, n, ell, d, _sign_of(d))


def hn_critical_polynomial(n: int, ell: int) -> RationalPolynomial:
    """The defect p(n-1)p(l+1) - p(n)p(l) as a polynomial in alpha."""
    if not n > ell >= 0:
        raise ValueError("requires n > ell >= 0")
    polys = _partition_polynomials(max(n, ell + 1))
    return polys[n - 1] * polys[ell + 1] - polys[n] * polys[ell]


def logconcavity_scan(seq: PartitionSequence, n_from: int, n_to: int) -> list[int]:
    """Indices n in [n_from, n_to] with p(n)^2 < p(n-1) p(n+1), exactly."""
    if not 1 <= n_from <= n_to <= seq.limit - 1:
        raise ValueError("scan range out of bounds")
    v = seq.values
    return [n for n in range(n_from, n_to + 1)
            if v[n] * v[n] < v[n - 1] * v[n + 1]]


def cft_pair_scan(seq: PartitionSequence, n_max: int) -> list[tuple[int, int]]:
    """All pairs n > ell >= 0 with n <= n_max violating
    p(n-1) p(l+1) >= p(n) p(l).

    A violation at (n, ell) is equivalent to r(ell+1) < r(n) for the ratio
    sequence r(j) = p(j)/p(j-1), so one suffix-maximum pass over r suffices;
    ratios are compared by cross-multiplication only.
    """
    if n_max > seq.limit - 1:
        raise ValueError("n_max exceeds sequence limit - 1")
    if n_max < 1:
        return []
    v = seq.values
    # suffix argmax of r(j) = v[j]/v[j-1] for j in 1..n_max
    suffix_best = [0] * (n_max + 2)
    best = n_max
    suffix_best[n_max + 1] = 0
    suffix_best[n_max] = n_max
    for j in range(n_max - 1, 0, -1):
        # r(j) >= r(best)?  cross-multiply (ties keep the smaller index
        # so equality is never misreported as a violation)
        if v[j] * v[best - 1] >= v[best] * v[j - 1]:
            best = j
        suffix_best[j] = best

    out = []
    for ell in range(0, n_max):
        j = ell + 1
        # the largest ratio at position n in (ell+1, n_max]; any n with
        # r(n) > r(ell+1) violates, and the suffix maximum finds them all
        if j + 1 > n_max:
            break
        m = suffix_best[j + 1]
        if v[j] * v[m - 1] < v[m] * v[j - 1]:
            # collect every violating n for this ell by a forward check
            for n in range(j + 1, n_max + 1):
                if v[j] * v[n - 1] < v[n] * v[j - 1]:
                    out.append((n, ell))
    return out
