"""The exact formula and the main-term envelope.

Evaluates p_alpha(n) analytically in two modes -- rigorous (certified
ball, honest about the huge k >= 2 tail bound) and heuristic (more
Kloosterman terms, uncertified but sharp) -- then audits the main-term
envelope Delta/M in [1/15, 29/15] on a grid where the theorem's
hypotheses hold.
"""

from fractions import Fraction

from fracparts import exact_sequence, p_alpha_analytic
from fracparts.verify import envelope_audit


def main():
    n = 60
    exact = int(exact_sequence(2, n).values[n])
    print("p_2(%d) = %d (exact)" % (n, exact))

    rig = p_alpha_analytic(2, n, mode="rigorous")
    print("\nrigorous one-term evaluation:")
    print("  ball contains exact value:", rig.ball.contains(exact))
    print("  radius ~ %.3e (the certified k >= 2 tail grows like e^(X/2);"
          % float(rig.ball.radius))
    print("  the ball is honest, not sharp)")

    heur = p_alpha_analytic(2, n, mode="heuristic", k_max=6)
    err = abs(heur.ball.center - exact) / exact
    print("\nheuristic evaluation with k <= 6 (uncertified):")
    print("  relative error of center: %.3e" % float(err))

    print("\nmain-term envelope audit, alpha = 2, l = 4200:")
    rows = envelope_audit(2, [4200], [2, 5, 10, 30, 60])
    print("  %6s %10s %10s %s" % ("n", "ratio_lo", "ratio_hi", "in envelope"))
    for r in rows:
        lo, hi = r["ratio"]
        print("  %6d %10.6f %10.6f %s" % (r["n"], float(lo), float(hi),
                                          r["in_envelope"]))
    assert all(Fraction(1, 15) <= r["ratio"][0] and
               r["ratio"][1] <= Fraction(29, 15) for r in rows)


if __name__ == "__main__":
    main()
