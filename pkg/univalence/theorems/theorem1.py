from univalence.expressions import T1
from univalence.theorem_checker import TheoremChecker


# Hypothesis: |z f''(z) / f'(z)| < |1 - alpha| n rho / (1 + |1 - alpha| rho) on the disk.
# Conclusion: |f'(z) - 1| < rho |1 - alpha|.
# With m > 2 boundary points the same checker covers the m-point average.
class Theorem1Checker(TheoremChecker):
    theorem_id = "T1"
    hypothesis_kind = T1

    def __init__(self, sampling_config=None, parameters=None):
        TheoremChecker.__init__(self, sampling_config, parameters)

    def hypothesis_bound(self, distance, rho, n):
        return distance * n * rho / (1 + distance * rho)


def check_thm1(f, spec, cfg=None):
    return Theorem1Checker(cfg).check(f, spec)
