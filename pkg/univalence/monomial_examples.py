import logging
import math
from dataclasses import replace

from univalence.boundary import AlphaMode, alpha_mean, monomial_boundary_points
from univalence.errors import CoefficientTooLarge, ConfigError
from univalence.power_series import ClassMember
from univalence.theorems.theorem1 import Theorem1Checker
from univalence.theorems.theorem2 import Theorem2Checker
from univalence.theorems.theorem5 import Theorem5Checker
from univalence.utils import format_complex

# Relative slack for the bound chain; its last link is an equality at rho = rho_min.
CHAIN_TOLERANCE = 1e-12


class MonomialExample:
    """Worked example for f(z) = z + a z^{n+1} with the two standard boundary points.

    `scale(n)` is the factor in front of |a| in the example's expression bound s, and
    `denominator_factor` turns s into the intermediate bound s / (1 - factor * s).
    """

    def __init__(self, example_id, checker_class, mode, denominator_factor, uses_order):
        self.example_id = example_id
        self.checker_class = checker_class
        self.mode = mode
        self.denominator_factor = denominator_factor
        self.uses_order = uses_order

    def scale(self, n):
        return n + 1 if self.uses_order else 1

    def coefficient_limit(self, n):
        return 1 / (self.denominator_factor * self.scale(n))

    def expression_bound(self, n, a_mod):
        return self.scale(n) * a_mod

    def intermediate_bound(self, n, a_mod):
        s = self.expression_bound(n, a_mod)
        return s / (1 - self.denominator_factor * s)


EXAMPLES = {
    1: MonomialExample(1, Theorem1Checker, AlphaMode.DERIVATIVE_MEAN, 2, True),
    2: MonomialExample(2, Theorem2Checker, AlphaMode.DERIVATIVE_MEAN, 1, True),
    5: MonomialExample(5, Theorem5Checker, AlphaMode.F_OVER_Z_MEAN, 2, False),
}


def example_for_id(example_id):
    if isinstance(example_id, str):
        example_id = example_id.strip().lower()
        if example_id.startswith("ex"):
            example_id = example_id[2:]
        try:
            example_id = int(example_id)
        except ValueError:
            raise ConfigError(f"Unknown example '{example_id}'")
    if example_id not in EXAMPLES:
        raise ConfigError(
            f"Unknown example {example_id}, expected one of {sorted(EXAMPLES)}"
        )
    return EXAMPLES[example_id]


def _check_order(n):
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ConfigError(f"Class order must be a positive integer, got {n!r}")


def rho_min(example_id, n, a_mod):
    """Smallest rho for which the example's hypothesis bound dominates its expression."""
    example = example_for_id(example_id)
    _check_order(n)
    if not math.isfinite(a_mod) or a_mod <= 0:
        raise ConfigError(f"|a| must be a positive real number, got {a_mod}")
    limit = example.coefficient_limit(n)
    if a_mod >= limit:
        raise CoefficientTooLarge(
            f"Example {example.example_id} needs |a| < {limit!r} for n = {n}, got {a_mod}"
        )
    s = example.expression_bound(n, a_mod)
    return math.sqrt(2) / (1 - example.denominator_factor * s)


def _chain_holds(chain):
    return all(
        lower <= upper + CHAIN_TOLERANCE * (1 + abs(upper))
        for lower, upper in zip(chain, chain[1:])
    )


def example_end_to_end(example_id, n, a, cfg=None):
    """Runs a worked example: boundary points, average, rho_min, checker, bound chain.

    The chain is (sampled sup of the conclusion expression, expression bound,
    intermediate bound, rho |1 - alpha|) and must be nondecreasing.
    """
    example = example_for_id(example_id)
    _check_order(n)
    a = complex(a)
    rho = rho_min(example.example_id, n, abs(a))

    f = ClassMember.monomial(a, n)
    points = monomial_boundary_points(a, n)
    spec = alpha_mean(f, points, example.mode).with_rho(rho)
    logging.info(
        f"Example {example.example_id}: n = {n}, a = {a}, "
        f"alpha = {format_complex(spec.alpha)}, rho = {rho!r}"
    )

    report = example.checker_class(cfg).check(f, spec)
    chain = (
        report.conclusion_sup.value,
        example.expression_bound(n, abs(a)),
        example.intermediate_bound(n, abs(a)),
        report.conclusion_bound,
    )
    chain_ok = _chain_holds(chain)
    if not chain_ok:
        logging.error(f"Example {example.example_id} bound chain fails: {chain}")
    return replace(report, example_chain=chain, chain_ok=chain_ok)
