"""Directed bound sequences: sandwich, certification, checkpoint resume.

Runs the truncated lower/upper recursions against exact values, certifies
log-concavity of 3-colored partition counts on a range, then interrupts
a run and resumes it from its checkpoint to show the stream is
reproduced bit for bit.
"""

import os
import tempfile
from fractions import Fraction

from fracparts import (BoundRun, certify_logconcave, checkpoint_load,
                       exact_sequence, run_bounds)


def main():
    print("sandwich check, alpha = 5/2, schedule d_j = min(j, 10 j^(1/3)):")
    exact = exact_sequence(Fraction(5, 2), 500).values
    sched = {"c": 10, "delta": Fraction(1, 3), "breakpoint": 0}
    worst = Fraction(0)
    for pair in run_bounds(Fraction(5, 2), sched, 500, 160):
        assert pair.lower.as_fraction() <= exact[pair.n] \
            <= pair.upper.as_fraction()
        if pair.lower.as_fraction() > 0:
            worst = max(worst, pair.width_fraction()
                        / pair.lower.as_fraction())
    print("  all 501 values contained; worst relative width %.3e"
          % float(worst))

    cert = certify_logconcave(3, "full", 1, 5000, 256)
    print("\nlog-concavity certificate for alpha = 3, n in [1, 5000]:")
    print("  outcome:", cert.outcome)
    print("  digest :", cert.digest())

    print("\ncheckpoint interrupt/resume determinism:")
    with tempfile.TemporaryDirectory() as tmp:
        cp = os.path.join(tmp, "run.ckpt")
        full = BoundRun(3, "full", 4000, 256)
        reference = [p.lower.serialize() for p in full.pairs()]

        interrupted = BoundRun(3, "full", 4000, 256, checkpoint_path=cp,
                               checkpoint_every=1500)
        partial = [p.lower.serialize()
                   for p in interrupted.pairs(stop_after=3200)]
        state = checkpoint_load(cp)
        print("  interrupted at n = 3200, resuming from checkpoint at n =",
              state.current_n)
        resumed = BoundRun(3, "full", 4000, 256, checkpoint_path=cp,
                           checkpoint_every=1500, resume_state=state)
        rest = [p.lower.serialize() for p in resumed.pairs()]
        merged = partial[: state.current_n + 1] + rest
        print("  stream identical to uninterrupted run:",
              merged == reference)
        print("  integrity hashes match:",
              resumed.integrity == full.integrity)


if __name__ == "__main__":
    main()
