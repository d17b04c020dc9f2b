import logging
import math

import numpy as np

from univalence.boundary import (
    AlphaMode,
    Reduce,
    SamplingConfig,
    alpha_mean,
    auxiliary_w,
    check_rho,
    circle_sup,
    m_alpha,
    sup_on_disk,
)
from univalence.errors import ConfigError, RhoOutOfRange
from univalence.expressions import FPRIME_MINUS_1, require_non_identity
from univalence.report import TheoremReport
from univalence.utils import format_complex, point_to_turns

# alpha supplied with an AlphaSpec must match the average recomputed from f.
ALPHA_MATCH_TOLERANCE = 1e-12

# The univalence spot check samples Re f' on a UNIVALENCE_GRID x UNIVALENCE_GRID
# polar grid of the (1 - epsilon)-disk.
UNIVALENCE_GRID = 100


class HypothesisResult:
    def __init__(self, bound, sup, limits_at_zero=None, ray_distance=None):
        self.bound = bound
        self.sup = sup
        self.limits_at_zero = limits_at_zero
        # (minimum distance, argmin) for the ray-avoidance hypothesis
        self.ray_distance = ray_distance


class TheoremChecker:
    """Checks one theorem's hypothesis and conclusion for a function f and an AlphaSpec.

    Subclasses set the hypothesis expression and implement `hypothesis_bound`.
    Checkers hold no per-run state and can be reused for any number of checks.
    """

    theorem_id = None
    mode = AlphaMode.DERIVATIVE_MEAN
    hypothesis_kind = None
    hypothesis_reduce = Reduce.MODULUS
    conclusion_kind = FPRIME_MINUS_1
    # Expressions with a 0/0 center are undefined for f(z) = z before alpha is.
    requires_non_identity = False

    def __init__(self, sampling_config=None, parameters=None, default_parameters=None):
        if parameters is None:
            parameters = {}
        if default_parameters is None:
            default_parameters = {}
        logging.debug(f"Init theorem checker {self.theorem_id}")
        unknown = set(parameters) - set(default_parameters)
        if unknown:
            raise ConfigError(
                f"Unknown parameters for {self.theorem_id}: {sorted(unknown)}"
            )
        self.parameters = dict(parameters)
        # Store default values for missing parameters
        for key, value in default_parameters.items():
            if key not in self.parameters:
                self.parameters[key] = value

        if sampling_config is None:
            sampling_config = SamplingConfig()
        self.sampling_config = sampling_config

    def check(self, f, spec):
        turns = [point_to_turns(z) for z in spec.points]
        logging.info(f"Checking {self.theorem_id} for {f} at points {turns} (turns)")
        if self.requires_non_identity:
            require_non_identity(f)
        spec = self._resolve_spec(f, spec)
        cfg = self.sampling_config
        distance = abs(1 - spec.alpha)

        hypothesis = self._hypothesis(f, spec)
        hypothesis_ok = hypothesis.sup.value < hypothesis.bound
        hypothesis_margin = hypothesis.bound - hypothesis.sup.value

        conclusion_bound = spec.rho * distance
        conclusion_sup = sup_on_disk(self.conclusion_kind, f, cfg, Reduce.MODULUS)
        conclusion_ok = conclusion_sup.value < conclusion_bound

        w = auxiliary_w(f, spec)
        w_sup = circle_sup(lambda zs: np.abs(w.evaluate_many(zs)), cfg.r_max, cfg).value

        m = m_alpha(f, spec.alpha, cfg, spec.mode)
        corollary1_bound = spec.rho * m

        # Close-to-convexity follows from |f' - 1| < 1 only.
        univalent_implied = (
            spec.mode is AlphaMode.DERIVATIVE_MEAN and conclusion_bound < 1
        )
        min_re_fprime = univalence_spot_check(f, cfg) if univalent_implied else None

        if hypothesis_ok and not conclusion_ok:
            logging.critical(
                f"{self.theorem_id}: hypothesis holds but conclusion fails for {f}: "
                f"sup {conclusion_sup.value!r} >= {conclusion_bound!r} "
                f"at z = {format_complex(conclusion_sup.argmax)}"
            )
        logging.info(
            f"{self.theorem_id}: hypothesis {hypothesis.sup.value!r} < "
            f"{hypothesis.bound!r}: {hypothesis_ok}, conclusion "
            f"{conclusion_sup.value!r} < {conclusion_bound!r}: {conclusion_ok}"
        )

        ray_distance_min, ray_distance_argmin = None, None
        if hypothesis.ray_distance is not None:
            ray_distance_min, ray_distance_argmin = hypothesis.ray_distance

        return TheoremReport(
            theorem_id=self.theorem_id,
            n=f.n,
            points=spec.points,
            mode=spec.mode,
            alpha=spec.alpha,
            rho=spec.rho,
            hypothesis_bound=hypothesis.bound,
            hypothesis_sup=hypothesis.sup,
            hypothesis_ok=hypothesis_ok,
            hypothesis_margin=hypothesis_margin,
            conclusion_bound=conclusion_bound,
            conclusion_sup=conclusion_sup,
            conclusion_ok=conclusion_ok,
            w_sup=w_sup,
            w_ok=w_sup < spec.rho,
            m_alpha=m,
            corollary1_bound=corollary1_bound,
            corollary1_ok=conclusion_sup.value < corollary1_bound,
            univalent_implied=univalent_implied,
            min_re_fprime=min_re_fprime,
            limits_at_zero=hypothesis.limits_at_zero,
            ray_distance_min=ray_distance_min,
            ray_distance_argmin=ray_distance_argmin,
            config_echo=cfg,
        )

    def hypothesis_bound(self, distance, rho, n):
        raise NotImplementedError("hypothesis_bound(self, distance, rho, n) missing")

    def _hypothesis(self, f, spec):
        bound = self.hypothesis_bound(abs(1 - spec.alpha), spec.rho, f.n)
        sup = sup_on_disk(
            self.hypothesis_kind, f, self.sampling_config, self.hypothesis_reduce
        )
        return HypothesisResult(bound, sup)

    def _resolve_spec(self, f, spec):
        if spec.mode is not self.mode:
            raise ConfigError(
                f"{self.theorem_id} needs a {self.mode.value} boundary average, "
                f"got {spec.mode.value}"
            )
        if spec.rho is None:
            raise RhoOutOfRange(f"{self.theorem_id} needs some real rho > 1")
        check_rho(spec.rho)

        recomputed = alpha_mean(f, spec.points, self.mode)
        tolerance = ALPHA_MATCH_TOLERANCE * (1 + abs(spec.alpha))
        if abs(recomputed.alpha - spec.alpha) > tolerance:
            raise ConfigError(
                f"alpha = {spec.alpha} is not the boundary average "
                f"{recomputed.alpha} of {f}"
            )
        return recomputed.with_rho(spec.rho)


def univalence_spot_check(f, cfg, grid=UNIVALENCE_GRID):
    """Minimum of Re f' over a polar grid of the (1 - epsilon)-disk."""
    radii = cfg.r_max * np.arange(1, grid + 1) / grid
    thetas = 2 * math.pi * np.arange(grid) / grid
    zs = (radii[:, np.newaxis] * np.exp(1j * thetas)[np.newaxis, :]).ravel()
    return float(np.min(f.derivative.evaluate_many(zs).real))
