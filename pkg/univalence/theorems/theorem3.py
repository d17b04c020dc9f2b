from univalence.boundary import Reduce
from univalence.expressions import T3, limit_at_zero
from univalence.theorem_checker import TheoremChecker


# Hypothesis: Re(z (z f'')' / (f' - 1)) < n^2 on the disk; the bound involves neither
# alpha nor rho, while the conclusion |f' - 1| < rho |1 - alpha| does.
#
# The expression tends to n^2 at z = 0, so by the maximum principle for its real part
# the strict hypothesis can only hold in degenerate cases. The supremum is taken on
# the annulus [inner_cutoff, 1 - epsilon] and the center limit is reported separately.
class Theorem3Checker(TheoremChecker):
    theorem_id = "T3"
    hypothesis_kind = T3
    hypothesis_reduce = Reduce.REAL_PART
    requires_non_identity = True

    def __init__(self, sampling_config=None, parameters=None):
        TheoremChecker.__init__(self, sampling_config, parameters)

    def hypothesis_bound(self, distance, rho, n):
        return float(n * n)

    def _hypothesis(self, f, spec):
        result = TheoremChecker._hypothesis(self, f, spec)
        result.limits_at_zero = limit_at_zero(T3, f).real
        return result


def check_thm3(f, spec, cfg=None):
    return Theorem3Checker(cfg).check(f, spec)
