import cmath
import logging
import math
from dataclasses import dataclass

import numpy as np

from univalence.boundary import SamplingConfig, circle_sup
from univalence.errors import ConfigError, PoleError, ZeroFunction
from univalence.power_series import PowerPoly, differentiate
from univalence.utils import complex_to_list, ordered_map

# Angular resolution of the probes; the realness of k is exact only at the true
# maximizer of |w|.
JACK_SAMPLING = SamplingConfig(angular_samples=4096, refine_iters=64)

DEFAULT_TOLERANCE = 1e-6
BISECTION_ITERATIONS = 60
MAX_RETRIES = 2

# Random coefficients are uniform in the box |re|, |im| <= COEFFICIENT_BOX (modulus at
# most 2); the leading coefficient is redrawn until its modulus is >= MIN_LEADING.
COEFFICIENT_BOX = math.sqrt(2)
MIN_LEADING = 0.1


@dataclass(frozen=True)
class ProbeResult:
    z0: complex
    k: complex
    k_real_ok: bool
    k_lower_ok: bool
    second_ok: bool
    r: float
    n: int
    value: float = None
    samples_used: int = 0

    def passed(self):
        return self.k_real_ok and self.k_lower_ok and self.second_ok

    def to_record(self):
        return {
            "z0": complex_to_list(self.z0),
            "k": complex_to_list(self.k),
            "k_real_ok": self.k_real_ok,
            "k_lower_ok": self.k_lower_ok,
            "second_ok": self.second_ok,
            "r": self.r,
            "n": self.n,
            "value": self.value,
            "samples_used": self.samples_used,
        }


def _log_derivative_imag(w, w_prime, z):
    # d/dtheta log|w(r e^{i theta})| = -Im(z w'/w)
    return (z * w_prime.evaluate(z) / w.evaluate(z)).imag


def _polish(w, w_prime, theta, r, step):
    """Bisection on Im(z w'/w) inside [theta - step, theta + step]."""
    low, high = theta - step, theta + step
    g_low = _log_derivative_imag(w, w_prime, r * cmath.exp(1j * low))
    g_high = _log_derivative_imag(w, w_prime, r * cmath.exp(1j * high))
    # A maximum of |w| needs Im(z w'/w) going from negative to positive.
    if not (g_low < 0 < g_high):
        return None
    for _ in range(BISECTION_ITERATIONS):
        middle = (low + high) / 2
        g_middle = _log_derivative_imag(w, w_prime, r * cmath.exp(1j * middle))
        if g_middle == 0:
            return middle
        if g_middle < 0:
            low = middle
        else:
            high = middle
    return (low + high) / 2


def probe(w, r, cfg=None, tol=DEFAULT_TOLERANCE):
    """Checks the max-modulus conclusions for w at the maximizer of |w| on |z| = r.

    With n the vanishing order of w at 0 and z0 the maximizer, k = z0 w'(z0)/w(z0)
    must be real with k >= n and Re(z0 w''(z0)/w'(z0)) + 1 >= k.
    """
    if cfg is None:
        cfg = JACK_SAMPLING
    if not isinstance(w, PowerPoly):
        w = PowerPoly(w)
    if w.is_zero():
        raise ZeroFunction("w is identically zero")
    if w[0] != 0:
        raise ConfigError(f"w(0) = {w[0]} must vanish")
    if not 0 < r < 1:
        raise ConfigError(f"Probe radius must lie in (0, 1), got {r}")
    n = w.vanishing_order()
    w_prime = differentiate(w)
    w_second = differentiate(w_prime)

    estimate = circle_sup(lambda zs: np.abs(w.evaluate_many(zs)), r, cfg)
    z0 = estimate.argmax
    value = estimate.value

    polished = _polish(w, w_prime, cmath.phase(z0), r, 2 * math.pi / cfg.angular_samples)
    if polished is not None:
        candidate = r * cmath.exp(1j * polished)
        candidate_value = abs(w.evaluate(candidate))
        if candidate_value >= value * (1 - 1e-14):
            z0, value = candidate, max(value, candidate_value)

    w_prime_at_z0 = w_prime.evaluate(z0)
    if w_prime_at_z0 == 0:
        raise PoleError(f"w' vanishes at the maximizer z0 = {z0}", z0)
    k = z0 * w_prime_at_z0 / w.evaluate(z0)
    second = (z0 * w_second.evaluate(z0) / w_prime_at_z0).real + 1

    result = ProbeResult(
        z0=z0,
        k=k,
        k_real_ok=abs(k.imag) <= tol * (1 + abs(k)),
        k_lower_ok=k.real >= n - tol,
        second_ok=second >= k.real - tol,
        r=r,
        n=n,
        value=value,
        samples_used=estimate.samples_used,
    )
    logging.debug(f"Probe n = {n}, r = {r}: z0 = {z0}, k = {k}, ok = {result.passed()}")
    return result


def random_function(rng, n_range, degree_range):
    """w = z^n (c0 + c1 z + ...) with random n, extra degree and coefficients."""
    n = int(rng.integers(n_range[0], n_range[1] + 1))
    extra_degree = int(rng.integers(degree_range[0], degree_range[1] + 1))
    leading = 0j
    while abs(leading) < MIN_LEADING:
        re, im = rng.uniform(-COEFFICIENT_BOX, COEFFICIENT_BOX, size=2)
        leading = complex(re, im)
    tail = rng.uniform(-COEFFICIENT_BOX, COEFFICIENT_BOX, size=(extra_degree, 2))
    coeffs = [0j] * n + [leading] + [complex(re, im) for re, im in tail]
    return PowerPoly(coeffs)


def _check_range(name, bounds, minimum):
    low, high = bounds
    if int(low) != low or int(high) != high or low < minimum or high < low:
        raise ConfigError(
            f"{name} must be integers {minimum} <= low <= high, got {bounds}"
        )


def random_probe_suite(
    seed,
    trials,
    n_range=(1, 3),
    degree_range=(0, 6),
    r_list=(0.5, 0.9),
    tol=DEFAULT_TOLERANCE,
    cfg=None,
):
    """Probes `trials` random functions at every radius of `r_list`.

    Trial i draws from the generator seeded with (seed, i), so every failure can be
    reproduced from its seed and trial index alone. Failed probes are repeated with
    doubled angular samples before they count as failures.
    """
    if int(trials) != trials or trials < 1:
        raise ConfigError(f"trials must be >= 1, got {trials}")
    _check_range("n_range", n_range, 1)
    _check_range("degree_range", degree_range, 0)
    if not r_list:
        raise ConfigError("r_list must not be empty")
    if cfg is None:
        cfg = JACK_SAMPLING
    logging.info(f"Jack probe suite: seed {seed}, {trials} trials, radii {list(r_list)}")

    def run_trial(trial):
        rng = np.random.default_rng([seed, trial])
        w = random_function(rng, n_range, degree_range)
        outcomes = []
        for r in r_list:
            result = probe(w, r, cfg, tol)
            retry_cfg = cfg
            retries = 0
            while not result.passed() and retries < MAX_RETRIES:
                retry_cfg = retry_cfg.doubled()
                retries += 1
                logging.info(f"Trial {trial} at r = {r} failed, retrying with "
                             f"{retry_cfg.angular_samples} samples")
                result = probe(w, r, retry_cfg, tol)
            outcomes.append((w, result))
        return trial, outcomes

    pass_count = 0
    fail_details = []
    for trial, outcomes in ordered_map(run_trial, range(int(trials))):
        for w, result in outcomes:
            if result.passed():
                pass_count += 1
                continue
            detail = {"seed": seed, "trial": trial}
            detail["coeffs"] = [complex_to_list(c) for c in w.coeffs]
            detail.update(result.to_record())
            fail_details.append(detail)
            logging.error(f"Jack probe failed: {detail}")

    summary = {
        "seed": seed,
        "trials": int(trials),
        "probes": pass_count + len(fail_details),
        "pass_count": pass_count,
        "fail_count": len(fail_details),
        "fail_details": fail_details,
    }
    logging.info(f"Jack probe suite: {pass_count} of {summary['probes']} probes passed")
    return summary
