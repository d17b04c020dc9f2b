from univalence.boundary import AlphaMode
from univalence.expressions import F_OVER_Z_MINUS_1, T5
from univalence.theorem_checker import TheoremChecker


# With F(z) = f(z)/z and beta the boundary average of F:
# Hypothesis: |z f'(z)/f(z) - 1| < |1 - beta| n rho / (1 + |1 - beta| rho).
# Conclusion: |f(z)/z - 1| < rho |1 - beta|.
#
# The identity used in the proof equates z f'/f itself (not z f'/f - 1) with the
# w-expression; the checker follows the hypothesis as stated with the "- 1".
class Theorem5Checker(TheoremChecker):
    theorem_id = "T5"
    mode = AlphaMode.F_OVER_Z_MEAN
    hypothesis_kind = T5
    conclusion_kind = F_OVER_Z_MINUS_1

    def __init__(self, sampling_config=None, parameters=None):
        TheoremChecker.__init__(self, sampling_config, parameters)

    def hypothesis_bound(self, distance, rho, n):
        return distance * n * rho / (1 + distance * rho)


def check_thm5(f, spec, cfg=None):
    return Theorem5Checker(cfg).check(f, spec)
