"""Small helpers around mpmath's interval (iv) context.

mpmath exposes interval arithmetic through a process-global context object
whose precision is a mutable attribute.  Everything rigorous in this package
brackets its work in ``local_prec`` so a caller always gets results computed
at the precision it asked for, and nested calls restore state correctly.

The iv context cannot convert fractions.Fraction directly (mpmath 1.3
raises NotImplementedError), so ``to_iv`` goes through an exact
numerator/denominator division, which is outward-rounded by the context.
"""

from contextlib import contextmanager
from fractions import Fraction

from mpmath import iv


@contextmanager
def local_prec(bits: int):
    """Temporarily set the iv context precision (in bits)."""
    if bits < 2:
        raise ValueError("precision must be at least 2 bits")
    old = iv.prec
    iv.prec = bits
    try:
        yield iv
    finally:
        iv.prec = old


def to_iv(x):
    """Convert int / Fraction / float / str / mpf to an enclosing interval.

    Integer and dyadic inputs convert exactly (up to the context precision);
    general rationals are enclosed by one outward-rounded division.
    """
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return iv.mpf(x.numerator)
        return iv.mpf(x.numerator) / x.denominator
    return iv.mpf(x)


def _mpf_tuple_to_fraction(t) -> Fraction:
    sign, man, exp, bc = t
    if man == 0 and exp != 0:
        raise ValueError("endpoint is not a finite number: %r" % (t,))
    man = int(man)
    if sign:
        man = -man
    if exp >= 0:
        return Fraction(man * (1 << exp))
    return Fraction(man, 1 << -exp)


def iv_endpoints(x) -> tuple[Fraction, Fraction]:
    """Exact rational endpoints of an interval (intervals are dyadic)."""
    a, b = x._mpi_
    return _mpf_tuple_to_fraction(a), _mpf_tuple_to_fraction(b)
