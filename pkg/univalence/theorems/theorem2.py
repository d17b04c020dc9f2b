from univalence.expressions import T2
from univalence.theorem_checker import TheoremChecker


# Hypothesis: |z f'' - z f''/f'| < |1 - alpha|^2 n rho^2 / (1 + |1 - alpha| rho).
# Conclusion: |f'(z) - 1| < rho |1 - alpha|.
class Theorem2Checker(TheoremChecker):
    theorem_id = "T2"
    hypothesis_kind = T2

    def __init__(self, sampling_config=None, parameters=None):
        TheoremChecker.__init__(self, sampling_config, parameters)

    def hypothesis_bound(self, distance, rho, n):
        return distance**2 * n * rho**2 / (1 + distance * rho)


def check_thm2(f, spec, cfg=None):
    return Theorem2Checker(cfg).check(f, spec)
