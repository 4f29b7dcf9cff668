"""Shared independent oracles for the test suite.

These deliberately avoid the library's own algorithms: divisor sums by
brute enumeration, partition numbers by generating-function convolution
(power-raising of the Euler product, never the sigma recursion), and
pair scans by the quadratic double loop.
"""

from fractions import Fraction

import pytest


def sigma_brute(ell: int) -> int:
    return sum(d for d in range(1, ell + 1) if ell % d == 0)


def partition_numbers_by_product(alpha, limit: int) -> list:
    """Coefficients of prod_{j>=1} (1 - q^j)^(-alpha) up to q^limit.

    Built factor by factor: (1 - q^j)^(-alpha) expands by the generalized
    binomial series with coefficients binom(alpha + i - 1, i) at q^(j*i).
    Exact Fraction arithmetic throughout.
    """
    alpha = Fraction(alpha)
    coeffs = [Fraction(1)] + [Fraction(0)] * limit
    for j in range(1, limit + 1):
        # binomial series for (1 - x)^(-alpha) in x = q^j
        binom = Fraction(1)
        series = [Fraction(1)]
        i = 1
        while j * i <= limit:
            binom = binom * (alpha + i - 1) / i
            series.append(binom)
            i += 1
        new = [Fraction(0)] * (limit + 1)
        for deg, b in enumerate(series):
            if b == 0:
                continue
            base = j * deg
            for t in range(limit + 1 - base):
                if coeffs[t]:
                    new[base + t] += b * coeffs[t]
        coeffs = new
    return coeffs


def cft_pairs_brute(values, n_max: int) -> set:
    out = set()
    for n in range(1, n_max + 1):
        for ell in range(0, n):
            if values[n - 1] * values[ell + 1] < values[n] * values[ell]:
                out.add((n, ell))
    return out


@pytest.fixture(scope="session")
def p2_small():
    from fracparts import exact_sequence
    return exact_sequence(2, 300)


@pytest.fixture(scope="session")
def p3_small():
    from fracparts import exact_sequence
    return exact_sequence(3, 300)
