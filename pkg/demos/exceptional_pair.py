"""The single exception to the product inequality, and the critical root.

For 2-colored partitions the inequality p(n-1)p(l+1) >= p(n)p(l) fails at
exactly one pair with l >= 1: (n, l) = (6, 4). This script reproduces the
failure exactly, scans a large range to show it is alone, and isolates
the critical parameter a0 where the (6,4) defect changes sign.
"""

from fractions import Fraction

from fracparts import (cft_defect, cft_pair_scan, exact_sequence,
                       hn_critical_polynomial, isolate_largest_real_root)


def main():
    rep = cft_defect(2, 6, 4)
    print("defect at (alpha=2, n=6, l=4):", rep.defect, "(%s)" % rep.sign)

    seq = exact_sequence(2, 1001)
    pairs = cft_pair_scan(seq, 1000)
    print("violating pairs up to n = 1000:", pairs)
    print("  (l = 0 pairs sit outside the n > l >= 1 quantifier)")

    poly = hn_critical_polynomial(6, 4)
    prim = poly.primitive_part()
    print("\n(6,4) defect polynomial, primitive part:")
    print(" ", prim)

    lo, hi = isolate_largest_real_root(prim, Fraction(1, 10 ** 12))
    print("\ncritical parameter a0 (largest real root):")
    print("  %.12f < a0 < %.12f" % (lo, hi))
    for alpha in (Fraction(203, 100), Fraction(21, 10)):
        d = cft_defect(alpha, 6, 4).defect
        side = "below" if alpha < lo else "above"
        print("  alpha = %s (%s a0): defect sign %+d" % (alpha, side,
                                                         1 if d > 0 else -1))


if __name__ == "__main__":
    main()
