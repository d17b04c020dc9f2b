import cmath
import logging
import math
from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np

from univalence.errors import (
    BoundaryViolation,
    ConfigError,
    DegenerateAlpha,
    MonotonicityViolation,
    RhoOutOfRange,
)
from univalence.expressions import (
    CENTER_LIMIT_KINDS,
    eval_expr_many,
    f_over_z_minus_beta,
    fprime_minus_alpha,
    require_non_identity,
)
from univalence.power_series import ClassMember
from univalence.utils import (
    BOUNDARY_TOLERANCE,
    DEGENERACY_TOLERANCE,
    MONOTONICITY_TOLERANCE,
    ensure_finite,
    ordered_map,
    point_from_turns,
)

# Samples within this relative distance of the best sample count as ties; the
# smallest angle among them wins.
TIE_TOLERANCE = 1e-14

INV_PHI = (math.sqrt(5) - 1) / 2  # 1 / phi

# The outermost radius 1 - epsilon is appended to these.
DEFAULT_INNER_RADII = (0.25, 0.5, 0.75, 0.9, 0.99)

# angular_samples: Size of the initial uniform grid on each circle.
# refine_iters: Golden-section iterations around the best grid angle.
# epsilon: The open disk is verified on the closed disk of radius 1 - epsilon.
# inner_cutoff: T3/T4 suprema are taken on the annulus [inner_cutoff, 1 - epsilon].
# radius_schedule: Increasing radii ending at 1 - epsilon; derived from epsilon if unset.
DEFAULT_SAMPLING_PARAMETERS = {
    "angular_samples": 2048,
    "refine_iters": 64,
    "epsilon": 1e-4,
    "inner_cutoff": 1e-3,
    "radius_schedule": None,
}


class Reduce(Enum):
    MODULUS = "modulus"
    REAL_PART = "real"

    def apply(self, values):
        if self is Reduce.MODULUS:
            return np.abs(values)
        return np.real(values)


class AlphaMode(Enum):
    DERIVATIVE_MEAN = "DerivativeMean"
    F_OVER_Z_MEAN = "FOverZMean"


def default_radius_schedule(epsilon):
    r_max = 1 - epsilon
    return tuple(r for r in DEFAULT_INNER_RADII if r < r_max) + (r_max,)


@dataclass(frozen=True)
class SamplingConfig:
    angular_samples: int = DEFAULT_SAMPLING_PARAMETERS["angular_samples"]
    refine_iters: int = DEFAULT_SAMPLING_PARAMETERS["refine_iters"]
    radius_schedule: tuple = None
    epsilon: float = DEFAULT_SAMPLING_PARAMETERS["epsilon"]
    inner_cutoff: float = DEFAULT_SAMPLING_PARAMETERS["inner_cutoff"]

    def __post_init__(self):
        if not 0 < self.epsilon < 1:
            raise ConfigError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if self.radius_schedule is None:
            object.__setattr__(
                self, "radius_schedule", default_radius_schedule(self.epsilon)
            )
        object.__setattr__(
            self, "radius_schedule", tuple(float(r) for r in self.radius_schedule)
        )
        self._validate()

    def _validate(self):
        if int(self.angular_samples) != self.angular_samples or self.angular_samples < 64:
            raise ConfigError(
                f"angular_samples must be >= 64, got {self.angular_samples}"
            )
        if int(self.refine_iters) != self.refine_iters or self.refine_iters < 0:
            raise ConfigError(f"refine_iters must be >= 0, got {self.refine_iters}")
        schedule = self.radius_schedule
        if len(schedule) == 0:
            raise ConfigError("radius_schedule must not be empty")
        if any(not 0 < r < 1 for r in schedule):
            raise ConfigError(f"All radii must lie in (0, 1): {schedule}")
        if any(b <= a for a, b in zip(schedule, schedule[1:])):
            raise ConfigError(f"radius_schedule must be strictly increasing: {schedule}")
        if abs(schedule[-1] - self.r_max) > 1e-12:
            raise ConfigError(
                f"radius_schedule must end at 1 - epsilon = {self.r_max}, "
                f"ends at {schedule[-1]}"
            )
        if not 0 < self.inner_cutoff < self.r_max:
            raise ConfigError(
                f"inner_cutoff must lie in (0, 1 - epsilon): {self.inner_cutoff}"
            )

    @property
    def r_max(self):
        return 1 - self.epsilon

    @classmethod
    def from_parameters(cls, parameters=None):
        """Builds a config from a (JSON) dict, filling missing keys with defaults."""
        if parameters is None:
            parameters = {}
        unknown = set(parameters) - set(DEFAULT_SAMPLING_PARAMETERS)
        if unknown:
            raise ConfigError(f"Unknown sampling parameters: {sorted(unknown)}")
        merged = dict(DEFAULT_SAMPLING_PARAMETERS)
        for key, value in parameters.items():
            if value is not None:
                merged[key] = value
        return cls(**merged)

    def to_parameters(self):
        return {
            "angular_samples": self.angular_samples,
            "refine_iters": self.refine_iters,
            "epsilon": self.epsilon,
            "inner_cutoff": self.inner_cutoff,
            "radius_schedule": list(self.radius_schedule),
        }

    def doubled(self):
        return replace(self, angular_samples=2 * self.angular_samples)


@dataclass(frozen=True)
class SupEstimate:
    """Sampled supremum; a lower bound on the true supremum.

    `profile` holds the (radius, value) pairs of the circles that were visited.
    """

    value: float
    argmax: complex
    radius: float
    samples_used: int
    profile: tuple = field(default=())


def circle_sup(objective, r, cfg):
    """Maximizes a real objective over the circle |z| = r.

    `objective` maps a numpy array of points to real values. A uniform angular grid
    locates the best sample (smallest angle on ties), then golden-section iterations
    refine the angle inside the two neighbouring grid cells.
    """
    samples = cfg.angular_samples
    thetas = 2 * math.pi * np.arange(samples) / samples
    values = np.asarray(objective(r * np.exp(1j * thetas)), dtype=float)
    top = float(np.max(values))
    best_index = int(np.argmax(values >= top - TIE_TOLERANCE * (1 + abs(top))))
    best_theta = float(thetas[best_index])
    best_value = float(values[best_index])
    tie = TIE_TOLERANCE * (1 + abs(best_value))

    def evaluate(theta):
        return float(objective(np.array([r * cmath.exp(1j * theta)]))[0])

    evaluations = 0
    step = 2 * math.pi / samples
    a, b = best_theta - step, best_theta + step
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    y_c = y_d = None
    for iteration in range(cfg.refine_iters):
        if iteration == 0:
            y_c, y_d = evaluate(c), evaluate(d)
            evaluations += 2
            candidates = ((c, y_c), (d, y_d))
        elif y_c > y_d:
            b, d, y_d = d, c, y_c
            c = b - INV_PHI * (b - a)
            y_c = evaluate(c)
            evaluations += 1
            candidates = ((c, y_c),)
        else:
            a, c, y_c = c, d, y_d
            d = a + INV_PHI * (b - a)
            y_d = evaluate(d)
            evaluations += 1
            candidates = ((d, y_d),)
        for theta, value in candidates:
            if value > best_value + tie:
                best_theta, best_value = theta, value

    best_theta = math.fmod(best_theta, 2 * math.pi)
    if best_theta < 0:
        best_theta += 2 * math.pi
    argmax = r * cmath.exp(1j * best_theta)
    return SupEstimate(best_value, argmax, r, samples + evaluations, ((r, best_value),))


def _check_radius(r):
    if not 0 < r < 1:
        raise ConfigError(f"Circle radius must lie in (0, 1), got {r}")


def sup_on_circle(kind, f, r, cfg, reduce=Reduce.MODULUS):
    _check_radius(r)
    require_non_identity(f)

    def objective(zs):
        return reduce.apply(eval_expr_many(kind, f, zs))

    return circle_sup(objective, r, cfg)


def disk_radii(kind, cfg):
    if kind.tag in CENTER_LIMIT_KINDS:
        outer = tuple(r for r in cfg.radius_schedule if r > cfg.inner_cutoff)
        return (cfg.inner_cutoff,) + outer
    return cfg.radius_schedule


def check_monotone(estimates, what):
    for inner, outer in zip(estimates, estimates[1:]):
        if outer.value < inner.value - MONOTONICITY_TOLERANCE:
            raise MonotonicityViolation(
                f"{what}: sup {outer.value!r} at r = {outer.radius} is below "
                f"sup {inner.value!r} at r = {inner.radius}"
            )


def sup_on_disk(kind, f, cfg, reduce=Reduce.MODULUS):
    """Supremum over the (1 - epsilon)-disk (annulus for T3/T4) along the schedule.

    Per-circle sups of an analytic expression are nondecreasing in r (maximum modulus
    principle, harmonic maximum principle for real parts); a decrease signals a pole
    or a sampling failure.
    """
    require_non_identity(f)
    estimates = ordered_map(
        lambda r: sup_on_circle(kind, f, r, cfg, reduce), disk_radii(kind, cfg)
    )
    check_monotone(estimates, f"{reduce.value} of {kind.name} for {f}")

    best = estimates[0]
    for estimate in estimates[1:]:
        if estimate.value > best.value:
            best = estimate
    profile = tuple((e.radius, e.value) for e in estimates)
    samples_used = sum(e.samples_used for e in estimates)
    logging.debug(f"sup {reduce.value} {kind.name} = {best.value!r} at {best.argmax}")
    return SupEstimate(best.value, best.argmax, best.radius, samples_used, profile)


@dataclass(frozen=True)
class AlphaSpec:
    """Boundary points and their average alpha (beta in FOverZMean mode) plus rho."""

    points: tuple
    alpha: complex
    rho: float = None
    mode: AlphaMode = AlphaMode.DERIVATIVE_MEAN

    def __post_init__(self):
        points = tuple(ensure_finite(z, "boundary point") for z in self.points)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "alpha", ensure_finite(self.alpha, "alpha"))
        if len(points) < 2:
            raise ConfigError(f"At least 2 boundary points are needed, got {len(points)}")
        check_boundary_points(points)
        if abs(self.alpha - 1) <= DEGENERACY_TOLERANCE:
            raise DegenerateAlpha(f"alpha = {self.alpha} coincides with 1")
        if self.rho is not None:
            check_rho(self.rho)

    def with_rho(self, rho):
        return replace(self, rho=rho)


def check_rho(rho):
    if not isinstance(rho, (int, float)) or not math.isfinite(rho) or rho <= 1:
        raise RhoOutOfRange(f"rho must be a real number > 1, got {rho}")


def check_boundary_points(points):
    for z in points:
        if abs(abs(z) - 1) > BOUNDARY_TOLERANCE:
            raise BoundaryViolation(f"{z} is not on the unit circle (|z| = {abs(z)!r})")


def boundary_values(f, points, mode):
    polynomial = f.derivative if mode is AlphaMode.DERIVATIVE_MEAN else f.quotient
    return [polynomial.evaluate(z) for z in points]


def alpha_mean(f, points, mode=AlphaMode.DERIVATIVE_MEAN):
    """Arithmetic mean of f' (or F = f/z) at boundary points; rho stays unset."""
    points = tuple(ensure_finite(z, "boundary point") for z in points)
    check_boundary_points(points)
    values = boundary_values(f, points, mode)
    # fsum makes the mean independent of the order of the points
    alpha = complex(
        math.fsum(v.real for v in values) / len(values),
        math.fsum(v.imag for v in values) / len(values),
    )
    if abs(alpha - 1) <= DEGENERACY_TOLERANCE:
        raise DegenerateAlpha(f"Boundary average {alpha} of {f} coincides with 1")
    return AlphaSpec(points, alpha, None, mode)


def monomial_boundary_points(a, n):
    """The two boundary points with f'(z1) = 1 + (n+1)|a|, f'(z2) = 1 + (n+1)|a| i.

    f(z) = z + a z^{n+1}; z1 = e^{-i arg(a)/n}, z2 = e^{i (pi - 2 arg(a)) / (2n)}.
    """
    a = complex(a)
    if a == 0:
        raise ConfigError("The monomial coefficient must be nonzero")
    argument = cmath.phase(a)
    z1 = point_from_turns(-argument / (2 * math.pi * n))
    z2 = point_from_turns((math.pi - 2 * argument) / (4 * math.pi * n))

    f = ClassMember.monomial(a, n)
    s = (n + 1) * abs(a)
    tolerance = 1e-10 * (1 + s)
    assert abs(f.derivative.evaluate(z1) - (1 + s)) <= tolerance, "f'(z1) != 1+(n+1)|a|"
    value = f.derivative.evaluate(z2)
    assert abs(value - (1 + s * 1j)) <= tolerance, "f'(z2) != 1+(n+1)|a|i"
    return z1, z2


def expression_for_mode(alpha, mode):
    if mode is AlphaMode.DERIVATIVE_MEAN:
        return fprime_minus_alpha(alpha)
    return f_over_z_minus_beta(alpha)


def m_alpha(f, alpha, cfg, mode=AlphaMode.DERIVATIVE_MEAN):
    """M_alpha = sup |f' - alpha| (M_beta = sup |f/z - beta| in FOverZMean mode)."""
    alpha = ensure_finite(alpha, "alpha")
    value = sup_on_disk(expression_for_mode(alpha, mode), f, cfg, Reduce.MODULUS).value
    # |f'(0) - alpha| = |1 - alpha| and the circle sups dominate the center value
    assert value >= abs(1 - alpha) - 1e-9, f"M = {value} < |1 - alpha| = {abs(1 - alpha)}"
    return value


def auxiliary_w(f, spec):
    """w(z) = (f'(z) - alpha)/(1 - alpha) - 1, with F = f/z and beta in FOverZMean mode.

    |w| < rho on the disk is equivalent to the conclusion |f' - 1| < rho |1 - alpha|.
    """
    if spec.mode is AlphaMode.DERIVATIVE_MEAN:
        shifted = f.derivative.with_constant(0)
    else:
        shifted = f.quotient.with_constant(0)
    return shifted.scaled(1 / (1 - spec.alpha))
