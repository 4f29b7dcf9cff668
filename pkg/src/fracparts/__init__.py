"""fracparts: certified computation for fractional partition numbers.

Exact recursions, rigorous truncated bound sequences with directed
rounding, and analytic evaluation with certified error control for the
coefficients p_alpha(n) of prod_j (1 - q^j)^(-alpha).
"""

from .arith import (KloostermanValue, SigmaTable, dedekind_sum, kloosterman,
                    mod_inverse, sigma_sieve)
from .exact import (DefectReport, PartitionSequence, cft_defect,
                    cft_pair_scan, convolve, exact_sequence,
                    hn_critical_polynomial, logconcavity_scan,
                    partition_polynomial)
from .polynomials import (NoRealRootError, RationalPolynomial,
                          isolate_largest_real_root)
from .analytic import (AnalyticValue, Ball, MainTermResult, bessel_I_series,
                       bessel_I_asymptotic, gamma_enclosure, hn_threshold,
                       main_term, p_alpha_analytic)
from .bounds import (BoundPair, BoundRun, DirectedValue, TruncationSchedule,
                     certify_logconcave, checkpoint_load, checkpoint_save,
                     make_schedule, run_bounds, sandwich_audit)
from .certificates import Certificate, CertificateStore
from .verify import (ClosureSet, VerificationPlan, closure, envelope_audit,
                     verify_cft, verify_hn_at)

__version__ = "0.1.0"
