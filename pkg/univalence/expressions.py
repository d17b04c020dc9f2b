import functools
from dataclasses import dataclass
from enum import Enum

import numpy as np

from univalence.errors import ConfigError, DomainError, IdentityFunction, PoleError
from univalence.power_series import differentiate
from univalence.utils import DISK_SLACK, POLE_TOLERANCE, ensure_finite


class ExprTag(Enum):
    T1 = "T1"
    T2 = "T2"
    T3 = "T3"
    T4 = "T4"
    T5 = "T5"
    FPRIME_MINUS_1 = "FprimeMinus1"
    F_OVER_Z_MINUS_1 = "FOverZMinus1"
    FPRIME_MINUS_ALPHA = "FprimeMinusAlpha"
    F_OVER_Z_MINUS_BETA = "FOverZMinusBeta"


_PARAMETERIZED_TAGS = {ExprTag.FPRIME_MINUS_ALPHA, ExprTag.F_OVER_Z_MINUS_BETA}


@dataclass(frozen=True)
class ExprKind:
    """One of the theorem expressions, optionally parameterized by alpha (beta).

    T1  z f''/f'                     pole where f' = 0
    T2  z f'' - z f''/f'             pole where f' = 0
    T3  z (z f'')' / (f' - 1)        0/0 at z = 0 (limit n^2), pole where f' = 1, z != 0
    T4  z f'' / (f' - 1)             0/0 at z = 0 (limit n), pole where f' = 1, z != 0
    T5  z f'/f - 1                   removable at z = 0 (value 0), pole where f = 0
    FprimeMinus1, FOverZMinus1, FprimeMinusAlpha, FOverZMinusBeta are polynomials.
    """

    tag: ExprTag
    alpha: complex = None

    def __post_init__(self):
        if (self.tag in _PARAMETERIZED_TAGS) != (self.alpha is not None):
            raise ConfigError(f"{self.tag.value} parameter mismatch: alpha={self.alpha}")

    @property
    def name(self):
        return self.tag.value

    @classmethod
    def from_name(cls, name, alpha=None):
        for tag in ExprTag:
            if tag.value.lower() == name.lower():
                return cls(tag, alpha)
        raise ConfigError(f"Unknown expression '{name}'")


T1 = ExprKind(ExprTag.T1)
T2 = ExprKind(ExprTag.T2)
T3 = ExprKind(ExprTag.T3)
T4 = ExprKind(ExprTag.T4)
T5 = ExprKind(ExprTag.T5)
FPRIME_MINUS_1 = ExprKind(ExprTag.FPRIME_MINUS_1)
F_OVER_Z_MINUS_1 = ExprKind(ExprTag.F_OVER_Z_MINUS_1)

# Expressions with an order-n zero of both numerator and denominator at z = 0.
CENTER_LIMIT_KINDS = {ExprTag.T3, ExprTag.T4}


def fprime_minus_alpha(alpha):
    return ExprKind(ExprTag.FPRIME_MINUS_ALPHA, complex(alpha))


def f_over_z_minus_beta(beta):
    return ExprKind(ExprTag.F_OVER_Z_MINUS_BETA, complex(beta))


def require_non_identity(f):
    if f.is_identity():
        raise IdentityFunction(f"{f} is the identity; the theorem expressions degenerate")


class _Quotient:
    """numerator / denominator as polynomials; `difference` evaluates num - num/den."""

    def __init__(self, numerator, denominator=None, difference=False):
        self.numerator = numerator
        self.denominator = denominator
        self.difference = difference


@functools.lru_cache(maxsize=256)
def _compile(kind, f):
    tag = kind.tag
    if tag in (ExprTag.T1, ExprTag.T2):
        return _Quotient(f.second_derivative.times_z(), f.derivative, tag == ExprTag.T2)
    if tag in CENTER_LIMIT_KINDS:
        require_non_identity(f)
        order = _center_order(f)
        z_f2 = f.second_derivative.times_z()
        if tag == ExprTag.T3:
            numerator = differentiate(z_f2).times_z()
        else:
            numerator = z_f2
        # Both sides carry the factor z^order; dividing it out keeps the quotient
        # well conditioned near the center.
        return _Quotient(
            numerator.shifted(order), f.derivative.with_constant(0).shifted(order)
        )
    if tag == ExprTag.T5:
        # z f'/f - 1 = z F'/F with F = f/z
        return _Quotient(differentiate(f.quotient).times_z(), f.quotient)
    if tag == ExprTag.FPRIME_MINUS_1:
        return _Quotient(f.derivative.with_constant(0))
    if tag == ExprTag.F_OVER_Z_MINUS_1:
        return _Quotient(f.quotient.with_constant(0))
    if tag == ExprTag.FPRIME_MINUS_ALPHA:
        return _Quotient(f.derivative.with_constant(1 - kind.alpha))
    if tag == ExprTag.F_OVER_Z_MINUS_BETA:
        return _Quotient(f.quotient.with_constant(1 - kind.alpha))
    raise ConfigError(f"Unsupported expression {kind}")


def _center_order(f):
    # a_1 = 1 is excluded: f' - 1 starts at index order = (first j >= 2 with a_j != 0) - 1
    return f.derivative.with_constant(0).vanishing_order()


def eval_expr_many(kind, f, zs):
    """Evaluates `kind` for `f` at every point of `zs` (numpy array)."""
    zs = np.asarray(zs, dtype=complex)
    if zs.size and float(np.max(np.abs(zs))) > 1 + DISK_SLACK:
        raise DomainError("Expression evaluation requested outside the closed unit disk")
    quotient = _compile(kind, f)
    numerator = quotient.numerator.evaluate_many(zs)
    if quotient.denominator is None:
        return numerator

    denominator = quotient.denominator.evaluate_many(zs)
    poles = np.abs(denominator) <= POLE_TOLERANCE * (1 + np.abs(numerator))
    if kind.tag in CENTER_LIMIT_KINDS:
        poles &= zs != 0
    if np.any(poles):
        z = zs[np.argmax(poles)]
        raise PoleError(f"{kind.name} of {f} has a vanishing denominator at z = {z}", z)

    with np.errstate(divide="ignore", invalid="ignore"):
        values = numerator / denominator
    if quotient.difference:
        values = numerator - values
    if kind.tag in CENTER_LIMIT_KINDS:
        center = zs == 0
        if np.any(center):
            values = np.where(center, limit_at_zero(kind, f), values)
    return values


def eval_expr(kind, f, z):
    z = ensure_finite(z, "z")
    if abs(z) > 1 + DISK_SLACK:
        raise DomainError(f"|z| = {abs(z)!r} is outside the closed unit disk")
    value = eval_expr_many(kind, f, np.array([z]))[0]
    return ensure_finite(value, f"{kind.name} at {z}")


def limit_at_zero(kind, f):
    """z -> 0 limit from the leading series coefficients."""
    require_non_identity(f)
    tag = kind.tag
    if tag in CENTER_LIMIT_KINDS:
        order = _center_order(f)
        return complex(order * order if tag == ExprTag.T3 else order)
    if tag in (ExprTag.T1, ExprTag.T2, ExprTag.T5):
        return 0j
    return _compile(kind, f).numerator[0]


def ray_distance(values, n):
    """Distance from each value to the real ray {x + 0i : x >= n}."""
    values = np.asarray(values, dtype=complex)
    return np.where(
        values.real >= n, np.abs(values.imag), np.abs(values - n)
    )
