import logging

import numpy as np

from univalence.boundary import SupEstimate, circle_sup, disk_radii
from univalence.errors import ConfigError
from univalence.expressions import T4, eval_expr_many, limit_at_zero, ray_distance
from univalence.theorem_checker import HypothesisResult, TheoremChecker
from univalence.utils import ordered_map

# ray_tol: A sample counts as hitting the forbidden ray {k >= n} if its distance to the
#          ray is at most ray_tol.
# radial_samples: Number of equally spaced circles scanned in the annulus in addition
#                 to the radius schedule.
DEFAULT_PARAMETERS = {
    "ray_tol": 1e-6,
    "radial_samples": 32,
}


# Hypothesis: z f''/(f' - 1) != k on the disk for all real k >= n.
# Conclusion: |f'(z) - 1| < rho |1 - alpha|.
#
# The expression tends to n at z = 0, so every neighbourhood of the center comes
# arbitrarily close to the forbidden ray; the scan covers the annulus
# [inner_cutoff, 1 - epsilon] and reports the center limit separately. The report's
# hypothesis "sup" is the negated minimum distance and its bound the negated ray_tol.
class Theorem4Checker(TheoremChecker):
    theorem_id = "T4"
    hypothesis_kind = T4
    requires_non_identity = True

    def __init__(self, sampling_config=None, parameters=None):
        TheoremChecker.__init__(self, sampling_config, parameters, DEFAULT_PARAMETERS)
        self.ray_tol = self.parameters["ray_tol"]
        self.radial_samples = self.parameters["radial_samples"]
        if not self.ray_tol > 0:
            raise ConfigError(f"ray_tol must be > 0, got {self.ray_tol}")
        if int(self.radial_samples) != self.radial_samples or self.radial_samples < 2:
            raise ConfigError(f"radial_samples must be >= 2, got {self.radial_samples}")

    def hypothesis_bound(self, distance, rho, n):
        return -self.ray_tol

    def _scan_radii(self):
        cfg = self.sampling_config
        spaced = np.linspace(cfg.inner_cutoff, cfg.r_max, int(self.radial_samples))
        return tuple(sorted(set(disk_radii(T4, cfg)) | {float(r) for r in spaced}))

    def _hypothesis(self, f, spec):
        cfg = self.sampling_config

        def negated_distance(zs):
            return -ray_distance(eval_expr_many(T4, f, zs), f.n)

        estimates = ordered_map(
            lambda r: circle_sup(negated_distance, r, cfg), self._scan_radii()
        )
        closest = estimates[0]
        for estimate in estimates[1:]:
            if estimate.value > closest.value:
                closest = estimate
        sup = SupEstimate(
            closest.value,
            closest.argmax,
            closest.radius,
            sum(e.samples_used for e in estimates),
            tuple((e.radius, e.value) for e in estimates),
        )
        minimum_distance = -closest.value
        logging.debug(f"T4 minimum ray distance {minimum_distance!r} at {closest.argmax}")
        return HypothesisResult(
            self.hypothesis_bound(abs(1 - spec.alpha), spec.rho, f.n),
            sup,
            limits_at_zero=limit_at_zero(T4, f).real,
            ray_distance=(minimum_distance, closest.argmax),
        )


def check_thm4(f, spec, cfg=None, ray_tol=DEFAULT_PARAMETERS["ray_tol"]):
    return Theorem4Checker(cfg, {"ray_tol": ray_tol}).check(f, spec)
