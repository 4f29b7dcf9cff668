"""Tests for divisor sums, Dedekind sums, and Kloosterman enclosures."""

import math
import random
from fractions import Fraction

import pytest

from fracparts import dedekind_sum, kloosterman, mod_inverse, sigma_sieve
from fracparts.ivutil import iv_endpoints
from conftest import sigma_brute


class TestSigmaSieve:
    def test_limit_one(self):
        assert sigma_sieve(1).values[1] == 1

    def test_small_table(self):
        assert sigma_sieve(6).values[1:] == [1, 3, 4, 7, 6, 12]

    def test_twelve(self):
        assert sigma_sieve(12).values[12] == 28  # 1+2+3+4+6+12

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            sigma_sieve(0)

    def test_against_brute_force(self):
        table = sigma_sieve(2000)
        for ell in range(1, 2001):
            assert table[ell] == sigma_brute(ell)

    def test_prime_and_growth_invariants(self):
        table = sigma_sieve(10_000)
        for p in (2, 3, 5, 7, 97, 991, 7919):
            assert table[p] == p + 1
        assert all(table[ell] >= ell + 1 for ell in range(2, 10_001))

    def test_partial_sums_quadratic_bound(self):
        table = sigma_sieve(100_000)
        running = 0
        for n in range(1, 100_001):
            running += table[n]
            assert running <= n * n


class TestModInverse:
    def test_identity(self):
        for k in (2, 5, 10, 97):
            assert mod_inverse(1, k) == 1

    def test_example(self):
        assert mod_inverse(3, 7) == 5

    def test_modulus_one(self):
        assert mod_inverse(5, 1) == 0

    def test_rejects_non_coprime(self):
        with pytest.raises(ValueError):
            mod_inverse(2, 4)

    def test_random_pairs(self):
        rng = random.Random(7)
        for _ in range(200):
            k = rng.randrange(2, 10_000)
            h = rng.randrange(1, k)
            if math.gcd(h, k) != 1:
                continue
            hbar = mod_inverse(h, k)
            assert 0 <= hbar < k
            assert (h * hbar) % k == 1


class TestDedekindSum:
    def test_trivial(self):
        assert dedekind_sum(0, 1) == 0
        assert dedekind_sum(1, 2) == 0

    def test_one_third(self):
        assert dedekind_sum(1, 3) == Fraction(1, 18)

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            dedekind_sum(2, 4)
        with pytest.raises(ValueError):
            dedekind_sum(3, 2)

    def test_reciprocity_random(self):
        # s(h,k) + s(k mod h, h) = -1/4 + (h^2 + k^2 + 1)/(12 h k)
        rng = random.Random(20240817)
        checked = 0
        while checked < 60:
            k = rng.randrange(2, 10_000)
            h = rng.randrange(1, k)
            if math.gcd(h, k) != 1:
                continue
            lhs = dedekind_sum(h, k) + dedekind_sum(k % h, h)
            rhs = Fraction(-1, 4) + Fraction(h * h + k * k + 1, 12 * h * k)
            assert lhs == rhs
            checked += 1

    def test_descent_matches_direct(self):
        # force the descent path and compare against the O(k) definition
        from fracparts import arith
        old = arith._DEDEKIND_DIRECT_LIMIT
        arith._DEDEKIND_DIRECT_LIMIT = 50
        try:
            rng = random.Random(3)
            for _ in range(40):
                k = rng.randrange(51, 3000)
                h = rng.randrange(1, k)
                if math.gcd(h, k) != 1:
                    continue
                assert dedekind_sum(h, k) == arith._dedekind_direct(h, k)
        finally:
            arith._DEDEKIND_DIRECT_LIMIT = old


class TestKloosterman:
    def test_k_equals_one(self):
        for alpha, n, m in [(2, 5, 3), (Fraction(5, 2), 0, 0), (7, -1, 4)]:
            kv = kloosterman(1, alpha, n, m)
            ra, rb = iv_endpoints(kv.real)
            ia, ib = iv_endpoints(kv.imag)
            assert ra == rb == 1 and ia == ib == 0

    def test_k_two_sign(self):
        # s(1,2) = 0, single term exp(pi i (m - n)) = (-1)^(m-n)
        kv = kloosterman(2, 2, 5, 3)
        ra, rb = iv_endpoints(kv.real)
        assert ra <= 1 <= rb and rb - ra < Fraction(1, 10**9)
        kv = kloosterman(2, Fraction(7, 3), 6, 3)
        ra, rb = iv_endpoints(kv.real)
        assert ra <= -1 <= rb

    def test_modulus_bound(self):
        rng = random.Random(11)
        for _ in range(25):
            k = rng.randrange(1, 51)
            alpha = Fraction(rng.randrange(1, 60), rng.randrange(1, 12))
            n = rng.randrange(-10, 50)
            m = rng.randrange(0, 5)
            kv = kloosterman(k, alpha, n, m)
            assert kv.modulus_upper() <= k + Fraction(1, 10**6)

    def test_against_direct_complex_sum(self):
        # independent float oracle: direct cmath evaluation
        import cmath
        from fracparts import dedekind_sum as ds, mod_inverse as mi
        rng = random.Random(5)
        for _ in range(10):
            k = rng.randrange(2, 30)
            alpha = Fraction(rng.randrange(1, 8))
            n = rng.randrange(0, 20)
            m = rng.randrange(0, 3)
            acc = 0
            for h in range(k):
                if math.gcd(h, k) != 1:
                    continue
                phase = (math.pi * float(alpha) * float(ds(h, k))
                         + 2 * math.pi * (m * mi(h, k) - n) * h / k)
                acc += cmath.exp(1j * phase)
            kv = kloosterman(k, alpha, n, m)
            ra, rb = iv_endpoints(kv.real)
            ia, ib = iv_endpoints(kv.imag)
            assert float(ra) - 1e-6 <= acc.real <= float(rb) + 1e-6
            assert float(ia) - 1e-6 <= acc.imag <= float(ib) + 1e-6
