"""Rigorous analytic evaluation: Bessel enclosures, gamma bounds, the
truncated exact formula, and the main-term envelope.

Everything returned as a Ball is certified: computed in interval
arithmetic with explicit remainder bounds for every truncated series.
The exact formula

  p_a(n) = 2 pi (n - a/24)^(-a/4-1/2) * sum_{m<=floor(a/24)} (a/24 - m)^(a/4+1/2)
           p_a(m) * sum_{k>=1} (A_{k,a}(n,m)/k) I_{a/2+1}((4 pi/k) sqrt((a/24-m)(n-a/24)))

is evaluated rigorously by keeping only k = 1 and absorbing the entire
k >= 2 block into the certified tail bound

  sum_{k>=2} I_kappa(X/k) <= 4 sqrt(X/pi) e^{X/2},

using |A_{k,a}| <= k.  That tail is enormous compared to 1 for desk-size n
(it genuinely grows like e^{X/2}), so the rigorous ball, while correct,
does not pin down the integer; the heuristic mode sums more k terms
without certification.  Large exponentials (e^{pi sqrt(2 a n / 3)} is
~10^200 at n ~ 4000) are handled by auto-scaling the working precision to
the exponent size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from mpmath import bernfrac, iv

from .arith import kloosterman
from .exact import exact_sequence
from .ivutil import iv_endpoints, local_prec, to_iv


class RegimeError(ValueError):
    """Input outside the validity regime of a stated bound."""


# ---------------------------------------------------------------------------
# balls


@dataclass(frozen=True)
class Ball:
    """Outward-rounded enclosure of a real number, backed by an interval."""

    interval: object  # iv.mpf

    def endpoints(self) -> tuple[Fraction, Fraction]:
        return iv_endpoints(self.interval)

    @property
    def center(self) -> Fraction:
        a, b = self.endpoints()
        return (a + b) / 2

    @property
    def radius(self) -> Fraction:
        a, b = self.endpoints()
        return (b - a) / 2

    def contains(self, value) -> bool:
        a, b = self.endpoints()
        v = Fraction(int(value)) if isinstance(value, int) else Fraction(value)
        return a <= v <= b

    def intersects(self, other: "Ball") -> bool:
        a, b = self.endpoints()
        c, d = other.endpoints()
        return a <= d and c <= b

    def __str__(self) -> str:
        return str(self.interval)


def _rat(x) -> Fraction:
    """Exact conversion; floats are taken at their binary value."""
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


# ---------------------------------------------------------------------------
# gamma


def _stirling_terms(prec: int) -> int:
    # with K ~ 0.4 prec terms the required shift point stays around prec/9,
    # keeping the exact rising-factorial correction short at any precision
    return max(10, int(0.4 * (prec + 8)))


def gamma_enclosure(x, prec: int = 128) -> Ball:
    """Certified enclosure of Gamma(x) for rational x > 0.

    Stirling's series with the standard remainder bound (the error is no
    larger than the first omitted term for positive real argument), after
    shifting the argument up far enough that the omitted term is below the
    target precision; the shift is undone by an exact rising factorial.
    """
    x = _rat(x)
    if x <= 0:
        raise ValueError("gamma_enclosure requires x > 0")

    terms = _stirling_terms(prec)
    k2 = 2 * terms + 2
    bnum, bden = bernfrac(k2)
    babs = abs(Fraction(int(bnum), int(bden)))
    # smallest y with |B_{2K+2}| / ((2K+2)(2K+1) y^{2K+1}) <= 2^-(prec+8)
    target_log = (prec + 8) * math.log(2)
    log_b = (babs.numerator.bit_length()
             - babs.denominator.bit_length()) * math.log(2)
    y_min = math.exp((log_b - math.log(k2 * (k2 - 1)) + target_log)
                     / (k2 - 1))
    shift = max(0, math.ceil(y_min - float(x)))
    y = x + shift

    wp = prec + 24 + int(y).bit_length()
    with local_prec(wp):
        yv = to_iv(y)
        ln_y = iv.log(yv)
        acc = (yv - to_iv(Fraction(1, 2))) * ln_y - yv \
            + iv.log(2 * iv.pi) / 2
        ypow = yv
        y2 = yv * yv
        for j in range(1, terms + 1):
            num, den = bernfrac(2 * j)
            coeff = Fraction(int(num), int(den) * (2 * j) * (2 * j - 1))
            acc += to_iv(coeff) / ypow
            ypow *= y2
        rem = Fraction(babs, k2 * (k2 - 1)) / y ** (k2 - 1)
        acc += to_iv(rem) * iv.mpf([-1, 1])
        gamma_y = iv.exp(acc)
        if shift:
            rising = Fraction(1)
            for i in range(shift):
                rising *= (x + i)
            gamma_y = gamma_y / to_iv(rising)
        result = gamma_y
    return Ball(result)


def gamma_upper_eval(a, x, prec: int = 128) -> Ball:
    """Certified enclosure of the upper incomplete gamma Gamma(a, x),
    rational a > 0, x > 0.

    Computed as Gamma(a) - gamma(a, x) with the lower-gamma series

        gamma(a,x) = x^a e^{-x} sum_{j>=0} x^j / (a (a+1) ... (a+j)),

    all of whose terms are positive, with a geometric tail bound.  The
    difference cancels heavily when x is large (Gamma(a,x) ~ e^{-x}), so
    the working precision carries an extra x*log2(e) bits.
    """
    a = _rat(a)
    x = _rat(x)
    if a <= 0 or x <= 0:
        raise ValueError("gamma_upper_eval requires a > 0 and x > 0")

    wp = prec + 32 + int(1.45 * float(x)) + int(a).bit_length()
    with local_prec(wp):
        xv = to_iv(x)
        av = to_iv(a)
        whole = gamma_enclosure(a, wp).interval
        # the difference Gamma(a) - gamma(a,x) is ~ x^(a-1) e^-x, far below
        # gamma(a,x) itself for large x, so truncation must be judged
        # against that scale rather than the running total
        _, scale_hi = iv_endpoints(iv.exp((av - 1) * iv.log(xv) - xv))
        target = scale_hi / 2 ** (prec + 4)
        # series for the lower incomplete gamma
        term = iv.exp(av * iv.log(xv) - xv) / av
        total = term
        j = 1
        while True:
            term = term * xv / (av + j)
            total += term
            ratio_hi = x / (a + j + 1)
            if ratio_hi < Fraction(1, 2):
                _, t_hi = iv_endpoints(term)
                tail = t_hi * ratio_hi / (1 - ratio_hi)
                if t_hi == 0 or tail < target:
                    total += to_iv(tail) * iv.mpf([0, 1])
                    break
            j += 1
            if j > 100000:
                raise RuntimeError("incomplete gamma series failed to converge")
        result = whole - total
    return Ball(result)


def incomplete_gamma_upper(a, x, prec: int = 64) -> Fraction:
    """The certified closed-form bound Gamma(a,x) <= (52/17) x^(a-1) e^{-x},
    valid for a >= 5/2 and x >= a^6/120.  Returns an exact upper endpoint."""
    a = _rat(a)
    x = _rat(x)
    if a < Fraction(5, 2):
        raise RegimeError("bound requires a >= 5/2")
    if x < a ** 6 / 120:
        raise RegimeError("bound requires x >= a^6/120")
    with local_prec(prec + 16):
        xv = to_iv(x)
        val = to_iv(Fraction(52, 17)) * iv.exp((to_iv(a) - 1) * iv.log(xv) - xv)
        _, hi = iv_endpoints(val)
    return hi


# ---------------------------------------------------------------------------
# Bessel I


@dataclass(frozen=True)
class BesselRegime:
    kappa: Fraction
    x: Fraction
    regime: str  # "series" | "asymptotic"
    validity: bool


def _asymptotic_valid(kappa: Fraction, x: Fraction) -> bool:
    return kappa >= 2 and x >= (kappa + Fraction(7, 2)) ** 6 / 120


def classify_bessel_regime(kappa, x) -> BesselRegime:
    kappa = _rat(kappa)
    x = _rat(x)
    if _asymptotic_valid(kappa, x):
        return BesselRegime(kappa, x, "asymptotic", True)
    return BesselRegime(kappa, x, "series", True)


def bessel_I_series(kappa, x, terms: Optional[int] = None,
                    prec: int = 128) -> Ball:
    """Enclosure of I_kappa(x) from the ascending series, kappa >= 0, x >= 0.

    All series terms are positive; truncation error is bounded by a
    geometric majorant once the term ratio drops below 1/2.  ``terms``
    sets a floor on the number of terms; the loop always continues until
    the tail bound is valid, so the radius is never silently wrong.
    """
    kappa = _rat(kappa)
    x = _rat(x)
    if kappa < 0 or x < 0:
        raise ValueError("requires kappa >= 0 and x >= 0")
    if x == 0:
        with local_prec(prec):
            v = iv.mpf(1 if kappa == 0 else 0)
        return Ball(v)

    wp = prec + 32 + max(0, int(1.45 * float(x)))
    with local_prec(wp):
        half = to_iv(x) / 2
        g = gamma_enclosure(kappa + 1, wp).interval
        if kappa == 0:
            t = 1 / g
        else:
            t = iv.exp(to_iv(kappa) * iv.log(half)) / g
        total = t
        m = 0
        min_terms = terms if terms is not None else 0
        while True:
            t = t * half * half / ((m + 1) * (to_iv(kappa) + m + 1))
            total += t
            m += 1
            ratio = (x / 2) ** 2 / ((m + 1) * (kappa + m + 1))
            if m >= min_terms and ratio < Fraction(1, 2):
                _, t_hi = iv_endpoints(t)
                tail = Fraction(t_hi) * ratio / (1 - ratio)
                lo_total, _ = iv_endpoints(total)
                if t_hi == 0 or (lo_total > 0
                                 and tail / lo_total < Fraction(1, 2 ** (prec + 8))):
                    total += to_iv(tail) * iv.mpf([0, 1])
                    break
            if m > 200000:
                raise RuntimeError("Bessel series failed to converge")
        result = total
    return Ball(result)


def bessel_I_asymptotic(kappa, x, prec: int = 128) -> Ball:
    """Four-term large-x expansion with explicit error, valid for
    kappa >= 2 and x >= (kappa + 7/2)^6 / 120:

      I_kappa(x) = e^x/sqrt(2 pi x) * [1 - (4k^2-1)/(8x)
                   + (4k^2-1)(4k^2-9)/(128 x^2)
                   - (4k^2-1)(4k^2-9)(4k^2-25)/(3072 x^3)]
                   +- (31 kappa^8 / (6 x^4)) e^x/sqrt(2 pi x).
    """
    kappa = _rat(kappa)
    x = _rat(x)
    if not _asymptotic_valid(kappa, x):
        raise RegimeError(
            "asymptotic expansion requires kappa >= 2 and "
            "x >= (kappa + 7/2)^6/120; use the series")

    mu = 4 * kappa * kappa
    c1 = -Fraction(mu - 1, 8)
    c2 = Fraction((mu - 1) * (mu - 9), 128)
    c3 = -Fraction((mu - 1) * (mu - 9) * (mu - 25), 3072)
    err = Fraction(31) * kappa ** 8 / (6 * x ** 4)
    poly = 1 + c1 / x + c2 / x ** 2 + c3 / x ** 3

    wp = prec + 32 + max(0, int(1.45 * float(x)))
    with local_prec(wp):
        xv = to_iv(x)
        pref = iv.exp(xv) / iv.sqrt(2 * iv.pi * xv)
        body = to_iv(poly) + to_iv(err) * iv.mpf([-1, 1])
        result = pref * body
    return Ball(result)


def bessel_upper_bound(kappa, x, prec: int = 64) -> Fraction:
    """Certified upper bound for I_kappa(x), kappa > -1/2:
    sqrt(2/(pi x)) e^x for x >= 1, else 2^(1-kappa) x^kappa / Gamma(kappa+1)."""
    kappa = _rat(kappa)
    x = _rat(x)
    if kappa <= Fraction(-1, 2):
        raise ValueError("requires kappa > -1/2")
    if x < 0:
        raise ValueError("requires x >= 0")
    if x == 0:
        return Fraction(1 if kappa == 0 else 0)
    wp = prec + 16 + max(0, int(1.45 * float(x)))
    with local_prec(wp):
        xv = to_iv(x)
        if x >= 1:
            val = iv.sqrt(2 / (iv.pi * xv)) * iv.exp(xv)
        else:
            g = gamma_enclosure(kappa + 1, wp).interval
            val = iv.exp((1 - to_iv(kappa)) * iv.log(to_iv(2))
                         + to_iv(kappa) * iv.log(xv)) / g
        _, hi = iv_endpoints(val)
    return hi


def tail_bound_F(kappa, X, prec: int = 64) -> Fraction:
    """Upper bound 4 sqrt(X/pi) e^{X/2} for sum_{k>=2} I_kappa(X/k),
    kappa >= 2."""
    kappa = _rat(kappa)
    X = _rat(X)
    if kappa < 2:
        raise RegimeError("tail bound requires kappa >= 2")
    if X <= 0:
        raise ValueError("requires X > 0")
    wp = prec + 16 + max(0, int(0.8 * float(X)))
    with local_prec(wp):
        Xv = to_iv(X)
        val = 4 * iv.sqrt(Xv / iv.pi) * iv.exp(Xv / 2)
        _, hi = iv_endpoints(val)
    return hi


def _bessel_enclosure(kappa: Fraction, x: Fraction, prec: int):
    if _asymptotic_valid(kappa, x):
        return bessel_I_asymptotic(kappa, x, prec)
    return bessel_I_series(kappa, x, prec=prec)


# ---------------------------------------------------------------------------
# the exact formula


@dataclass(frozen=True)
class AnalyticValue:
    alpha: Fraction
    n: int
    ball: Ball
    certified: bool
    k_max: int
    meets_target: Optional[bool]  # None when no target requested


def p_alpha_analytic(alpha, n: int, mode: str = "rigorous",
                     prec: Optional[int] = None, k_max: int = 1,
                     radius_target=None) -> AnalyticValue:
    """Evaluate the exact formula for p_alpha(n), alpha > 0 rational.

    rigorous: k = 1 terms by Bessel enclosure, the whole k >= 2 block
    bounded via |A_{k,alpha}| <= k and the F tail bound; the returned ball
    certifiably contains p_alpha(n).  heuristic: sums k <= k_max with a
    non-certified tail estimate; flagged by certified=False.
    """
    alpha = _rat(alpha)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if mode not in ("rigorous", "heuristic"):
        raise ValueError("mode must be rigorous or heuristic")
    if Fraction(n) <= alpha / 24:
        raise ValueError("requires n > alpha/24")
    if mode == "rigorous":
        k_max = 1

    beta = int(alpha / 24)
    pm = exact_sequence(alpha, beta).values
    kappa = alpha / 2 + 1
    Y = n - alpha / 24

    # auto-scale precision to the exponent of the dominant term
    x1f = 4 * math.pi * math.sqrt(float(alpha / 24) * float(Y))
    wp = prec if prec is not None else int(x1f * 1.45) + 64

    with local_prec(wp + 32):
        Yv = to_iv(Y)
        front = 2 * iv.pi * iv.exp(to_iv(-alpha / 4 - Fraction(1, 2))
                                   * iv.log(Yv))
        total = iv.mpf(0)
        for m in range(beta + 1):
            c = alpha / 24 - m
            if c == 0:
                continue
            cpow = iv.exp(to_iv(alpha / 4 + Fraction(1, 2)) * iv.log(to_iv(c)))
            pmv = pm[m] if isinstance(pm[m], Fraction) else Fraction(int(pm[m]))
            weight = cpow * to_iv(pmv)
            # X_m = 4 pi sqrt(c Y); I_kappa is increasing, so endpoint
            # evaluations enclose it over the whole X interval
            Xv = 4 * iv.pi * iv.sqrt(to_iv(c) * Yv)
            xa, xb = iv_endpoints(Xv)
            inner = iv.mpf(0)
            for k in range(1, k_max + 1):
                ia, _ = _bessel_enclosure(kappa, xa / k, wp).endpoints()
                _, ib = _bessel_enclosure(kappa, xb / k, wp).endpoints()
                ik = to_iv(ia) + to_iv(ib - ia) * iv.mpf([0, 1])
                if k == 1:
                    inner += ik
                else:
                    kv = kloosterman(k, alpha, n, m, prec=wp)
                    inner += kv.real * ik / k
            if mode == "rigorous":
                tail = tail_bound_F(kappa, xb, wp)
                inner += to_iv(tail) * iv.mpf([-1, 1])
            else:
                # rough, non-certified tail guess: first omitted magnitude
                guess_x = xb / (k_max + 1)
                guess = bessel_upper_bound(kappa, guess_x, wp)
                inner += to_iv(guess) * iv.mpf([-1, 1])
            total += weight * inner
        result = front * total

    ball = Ball(result)
    meets = None
    if radius_target is not None:
        meets = ball.radius <= Fraction(radius_target)
    return AnalyticValue(alpha, n, ball, mode == "rigorous", k_max, meets)


# ---------------------------------------------------------------------------
# main term and threshold


@dataclass(frozen=True)
class MainTermResult:
    alpha: Fraction
    n: int
    ell: int
    ball: Ball
    envelope: tuple[Fraction, Fraction]
    hypotheses_ok: bool
    failures: tuple[str, ...]


ENVELOPE = (Fraction(1, 15), Fraction(29, 15))


def hn_threshold(alpha) -> Fraction:
    """Threshold above which the product inequality is guaranteed:
    2 alpha^11 + alpha/24 for alpha <= 24, with the 100/(alpha-24) operand
    joining the max for alpha > 24."""
    alpha = _rat(alpha)
    if alpha < 2:
        raise ValueError("requires alpha >= 2")
    first = 2 * alpha ** 11 + alpha / 24
    if alpha > 24:
        second = Fraction(100) / (alpha - 24) + alpha / 24
        return max(first, second)
    return first


def main_term_hypotheses(alpha: Fraction, n: int, ell: int) -> tuple[bool, tuple[str, ...]]:
    failures = []
    if alpha < 2:
        failures.append("alpha < 2")
    if n <= ell + 1:
        failures.append("n <= ell + 1")
    L = ell - alpha / 24
    need = 2 * alpha ** 11
    if alpha > 24:
        need = max(need, Fraction(100) / (alpha - 24))
    if L < need:
        failures.append("L below threshold")
    return (not failures, tuple(failures))


def main_term(alpha, n: int, ell: int, prec: Optional[int] = None) -> MainTermResult:
    """Ball enclosure of
    M = pi (a/24)^(a/2+1) N^(-a/4-5/4) L^(-a/4-5/4)
        e^{pi sqrt(2a/3)(sqrt N + sqrt L)} (sqrt N - sqrt L),
    N = n - 1 - a/24, L = ell - a/24, plus the envelope guarantee
    Delta/M in [1/15, 29/15] when the hypotheses hold."""
    alpha = _rat(alpha)
    if n <= ell + 1:
        raise ValueError("requires n > ell + 1")
    ok, failures = main_term_hypotheses(alpha, n, ell)

    N = n - 1 - alpha / 24
    L = Fraction(ell) - alpha / 24
    if L <= 0 or N <= 0:
        raise ValueError("requires N > 0 and L > 0")

    expf = math.pi * math.sqrt(2 * float(alpha) / 3) * (
        math.sqrt(float(N)) + math.sqrt(float(L)))
    wp = prec if prec is not None else int(expf * 1.45) + 64

    with local_prec(wp + 32):
        Nv = to_iv(N)
        Lv = to_iv(L)
        av24 = to_iv(alpha / 24)
        expo = -to_iv(alpha) / 4 - to_iv(Fraction(5, 4))
        body = (iv.pi
                * iv.exp((to_iv(alpha) / 2 + 1) * iv.log(av24))
                * iv.exp(expo * iv.log(Nv))
                * iv.exp(expo * iv.log(Lv))
                * iv.exp(iv.pi * iv.sqrt(2 * to_iv(alpha) / 3)
                         * (iv.sqrt(Nv) + iv.sqrt(Lv)))
                * (iv.sqrt(Nv) - iv.sqrt(Lv)))
    return MainTermResult(alpha, n, ell, Ball(body), ENVELOPE, ok, failures)
