"""Dense polynomials over the rationals, plus certified real-root isolation.

Only the machinery actually needed downstream lives here: ring arithmetic,
content/primitive-part splitting, exact division (for checking a candidate
factor), Sturm chains, and bisection-based isolation of the largest real
root with exact rational endpoint evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence, Union

Rat = Union[int, Fraction]


class NoRealRootError(ValueError):
    """Raised when sign analysis proves the polynomial has no real root."""


def _trim(coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class RationalPolynomial:
    """Polynomial in one symbol, constant term first, exact coefficients."""

    coefficients: tuple[Fraction, ...]

    @staticmethod
    def from_coeffs(coeffs: Sequence[Rat]) -> "RationalPolynomial":
        return RationalPolynomial(_trim([Fraction(c) for c in coeffs]))

    @staticmethod
    def constant(c: Rat) -> "RationalPolynomial":
        return RationalPolynomial.from_coeffs([c])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def __call__(self, x: Rat) -> Fraction:
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __add__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RationalPolynomial(_trim(out))

    def __neg__(self) -> "RationalPolynomial":
        return RationalPolynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        return self + (-other)

    def __mul__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        a, b = self.coefficients, other.coefficients
        if not a or not b:
            return RationalPolynomial(())
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return RationalPolynomial(_trim(out))

    def scale(self, c: Rat) -> "RationalPolynomial":
        c = Fraction(c)
        if c == 0:
            return RationalPolynomial(())
        return RationalPolynomial(tuple(x * c for x in self.coefficients))

    def shift_up(self, power: int = 1) -> "RationalPolynomial":
        """Multiply by the symbol to the given power."""
        if self.is_zero():
            return self
        return RationalPolynomial(
            (Fraction(0),) * power + self.coefficients)

    def derivative(self) -> "RationalPolynomial":
        return RationalPolynomial(_trim(
            [i * c for i, c in enumerate(self.coefficients)][1:]))

    def content(self) -> Fraction:
        """Positive rational c with self = c * primitive integer polynomial."""
        if self.is_zero():
            return Fraction(0)
        den = lcm(*(c.denominator for c in self.coefficients))
        num = gcd(*(int(c * den) for c in self.coefficients))
        return Fraction(num, den)

    def primitive_part(self) -> "RationalPolynomial":
        """self / content, sign-normalized to a positive leading coefficient."""
        c = self.content()
        if c == 0:
            return self
        if self.coefficients[-1] < 0:
            c = -c
        return self.scale(1 / c)

    def divmod(self, other: "RationalPolynomial"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coefficients)
        quot = [Fraction(0)] * max(0, len(rem) - len(other.coefficients) + 1)
        d = other.degree
        lead = other.coefficients[-1]
        for i in range(len(rem) - 1, d - 1, -1):
            q = rem[i] / lead
            if q:
                quot[i - d] = q
                for j, c in enumerate(other.coefficients):
                    rem[i - d + j] -= q * c
        return (RationalPolynomial(_trim(quot)), RationalPolynomial(_trim(rem)))

    def divides(self, other: "RationalPolynomial") -> bool:
        """True when self divides other exactly."""
        _, rem = other.divmod(self)
        return rem.is_zero()

    def lowest_power(self) -> int:
        """Exponent of the largest pure power of the symbol dividing self."""
        for i, c in enumerate(self.coefficients):
            if c != 0:
                return i
        return 0

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coefficients[i]
            if c == 0:
                continue
            term = "a^%d" % i if i > 1 else ("a" if i == 1 else "")
            mag = abs(c)
            coef = "" if (mag == 1 and i > 0) else str(mag)
            sep = "*" if (coef and term) else ""
            lead = "-" if c < 0 else ("+" if parts else "")
            parts.append("%s %s%s%s" % (lead, coef, sep, term) if parts
                         else "%s%s%s%s" % ("-" if c < 0 else "", coef, sep, term))
        return " ".join(parts)


def sturm_chain(p: RationalPolynomial) -> list[RationalPolynomial]:
    chain = [p, p.derivative()]
    while not chain[-1].is_zero() and chain[-1].degree > 0:
        _, rem = chain[-2].divmod(chain[-1])
        if rem.is_zero():
            break
        chain.append(-rem)
    return [q for q in chain if not q.is_zero()]


def _sign_variations(chain: list[RationalPolynomial], x: Fraction) -> int:
    signs = []
    for q in chain:
        v = q(x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def root_count(chain: list[RationalPolynomial], a: Fraction, b: Fraction) -> int:
    """Number of distinct real roots of chain[0] in the half-open (a, b]."""
    return _sign_variations(chain, a) - _sign_variations(chain, b)


def cauchy_root_bound(p: RationalPolynomial) -> Fraction:
    """All real roots lie in (-B, B) with B = 1 + max |c_i / c_d|."""
    lead = abs(p.coefficients[-1])
    return 1 + max(abs(c) / lead for c in p.coefficients)


def isolate_largest_real_root(p: RationalPolynomial,
                              precision: Rat) -> tuple[Fraction, Fraction]:
    """Interval of width <= precision around the largest real root of p.

    Exact arithmetic throughout; raises NoRealRootError when the Sturm
    chain proves there is no real root.
    """
    if p.is_zero():
        raise ValueError("zero polynomial")
    precision = Fraction(precision)
    if precision <= 0:
        raise ValueError("precision must be positive")
    if p.degree == 0:
        raise NoRealRootError("nonzero constant has no root")
    if p.degree == 1:
        c0, c1 = p.coefficients
        r = -c0 / c1
        return (r, r)

    # deflate repeated roots so Sturm counts are reliable
    work = p
    d = p.derivative()
    g = _poly_gcd(p, d)
    if g.degree > 0:
        work, _ = p.divmod(g)
    chain = sturm_chain(work)

    bound = cauchy_root_bound(work)
    lo, hi = -bound, bound
    if root_count(chain, lo, hi) == 0:
        raise NoRealRootError("Sturm analysis finds no real root")

    while hi - lo > precision:
        mid = (lo + hi) / 2
        above = root_count(chain, mid, hi)
        if above > 0:
            lo = mid
        elif work(mid) == 0:
            return (mid, mid)
        else:
            hi = mid
    return (lo, hi)


def _poly_gcd(a: RationalPolynomial, b: RationalPolynomial) -> RationalPolynomial:
    while not b.is_zero():
        _, r = a.divmod(b)
        a, b = b, r
    if a.is_zero():
        return a
    return a.primitive_part()
