import logging
import math

import numpy as np

from univalence.errors import ClassViolation, ConfigError, DomainError, NonFiniteValue
from univalence.utils import DISK_SLACK, ensure_finite


class PowerPoly:
    """Truncated complex power series; coeffs[j] is the coefficient of z^j."""

    def __init__(self, coeffs):
        coeffs = tuple(ensure_finite(c, "coefficient") for c in coeffs)
        if len(coeffs) == 0:
            raise ConfigError("PowerPoly needs at least 1 coefficient")
        self.coeffs = coeffs
        # numpy copy for vectorized evaluation
        self._array = np.array(coeffs, dtype=complex)

    def __repr__(self):
        terms = ",".join(repr(c) for c in self.coeffs)
        return f"P({terms})"

    def __eq__(self, other):
        if not isinstance(other, PowerPoly):
            return False

        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, j):
        if j >= len(self.coeffs):
            return 0j
        return self.coeffs[j]

    def degree(self):
        for j in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[j] != 0:
                return j
        return 0

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def vanishing_order(self):
        """Index of the first nonzero coefficient."""
        for j, c in enumerate(self.coeffs):
            if c != 0:
                return j
        raise ValueError("The zero polynomial has no vanishing order")

    def shifted(self, k):
        """Returns p(z) / z^k; the first k coefficients must vanish."""
        assert all(c == 0 for c in self.coeffs[:k]), f"{self} is not divisible by z^{k}"
        if k >= len(self.coeffs):
            return PowerPoly([0])
        return PowerPoly(self.coeffs[k:])

    def times_z(self):
        return PowerPoly((0j,) + self.coeffs)

    def with_constant(self, constant):
        return PowerPoly((complex(constant),) + self.coeffs[1:])

    def scaled(self, factor):
        return PowerPoly([factor * c for c in self.coeffs])

    def rotated(self, phi):
        """Returns p(e^{i phi} z)."""
        return PowerPoly([c * complex(math.cos(j * phi), math.sin(j * phi))
                          for j, c in enumerate(self.coeffs)])

    def evaluate(self, z):
        return evaluate(self, z)

    def evaluate_many(self, zs):
        return evaluate_many(self, zs)


def _check_domain(modulus):
    if modulus > 1 + DISK_SLACK:
        raise DomainError(f"|z| = {modulus!r} is outside the closed unit disk")


def evaluate(p, z):
    """Horner evaluation of p at a single point of the closed disk."""
    z = ensure_finite(z, "z")
    _check_domain(abs(z))
    result = 0j
    for c in reversed(p.coeffs):
        result = result * z + c
    return ensure_finite(result, f"{p} at {z}")


def evaluate_many(p, zs):
    """Vectorized Horner evaluation (numpy polyval) over an array of points."""
    zs = np.asarray(zs, dtype=complex)
    if zs.size == 0:
        return zs.copy()
    if not np.all(np.isfinite(zs)):
        raise NonFiniteValue("Evaluation points must be finite")
    _check_domain(float(np.max(np.abs(zs))))
    values = np.polynomial.polynomial.polyval(zs, p._array)
    if not np.all(np.isfinite(values)):
        raise NonFiniteValue(f"{p} overflowed on the evaluation grid")
    return values


def differentiate(p):
    if len(p.coeffs) == 1:
        return PowerPoly([0])
    return PowerPoly([(j + 1) * p.coeffs[j + 1] for j in range(len(p.coeffs) - 1)])


class _NotInAnyProperClass:
    """Marker returned by class_order for the identity f(z) = z."""

    def __repr__(self):
        return "NotInAnyProperClass"


NOT_IN_ANY_PROPER_CLASS = _NotInAnyProperClass()


def _check_normalization(p):
    if p[0] != 0:
        raise ClassViolation(f"a_0 = {p[0]} must be exactly 0")
    if p[1] != 1:
        raise ClassViolation(f"a_1 = {p[1]} must be exactly 1")


def class_order(p):
    """Returns the largest n with p in A_n, or NOT_IN_ANY_PROPER_CLASS for p = z."""
    _check_normalization(p)
    for j in range(2, len(p.coeffs)):
        if p.coeffs[j] != 0:
            return j - 1
    return NOT_IN_ANY_PROPER_CLASS


class ClassMember:
    """A PowerPoly certified to lie in A_n.

    Exact-zero tests are literal: membership is a structural input contract.
    """

    def __init__(self, poly, n):
        if not isinstance(poly, PowerPoly):
            poly = PowerPoly(poly)
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise ConfigError(f"Class order must be a positive integer, got {n!r}")
        _check_normalization(poly)
        for j in range(2, n + 1):
            if poly[j] != 0:
                raise ClassViolation(
                    f"a_{j} = {poly[j]} must vanish for a member of A_{n}"
                )
        self.poly = poly
        self.n = n

        self.derivative = differentiate(poly)
        self.second_derivative = differentiate(self.derivative)
        # F(z) = f(z) / z
        self.quotient = poly.shifted(1)

    @classmethod
    def from_poly(cls, poly):
        """Certifies `poly` with its largest class order (1 for the identity)."""
        if not isinstance(poly, PowerPoly):
            poly = PowerPoly(poly)
        order = class_order(poly)
        if order is NOT_IN_ANY_PROPER_CLASS:
            logging.debug("Identity function certified as member of A_1")
            order = 1
        return cls(poly, order)

    @classmethod
    def monomial(cls, a, n):
        """f(z) = z + a z^{n+1}."""
        coeffs = [0j] * (n + 2)
        coeffs[1] = 1 + 0j
        coeffs[n + 1] = complex(a)
        return cls(PowerPoly(coeffs), n)

    def __repr__(self):
        return f"A{self.n}{self.poly!r}"

    def __eq__(self, other):
        if not isinstance(other, ClassMember):
            return False

        return self.n == other.n and self.poly == other.poly

    def __hash__(self):
        return hash((self.n, self.poly))

    def is_identity(self):
        return class_order(self.poly) is NOT_IN_ANY_PROPER_CLASS


# --- Coefficient files: one `index,re,im` line per coefficient ---


def parse_coefficient_lines(lines, source="<coefficients>"):
    entries = {}
    last_index = -1
    for line_number, line in enumerate(lines, start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(",")
        if len(parts) != 3:
            raise ConfigError(f"{source}:{line_number}: expected 'index,re,im'")
        try:
            index = int(parts[0])
            value = complex(float(parts[1]), float(parts[2]))
        except ValueError:
            raise ConfigError(f"{source}:{line_number}: malformed entry '{line}'")
        if index <= last_index:
            raise ConfigError(f"{source}:{line_number}: indices must strictly increase")
        entries[index] = ensure_finite(value, f"{source}:{line_number}")
        last_index = index
    if not entries:
        raise ConfigError(f"{source} contains no coefficients")

    coeffs = [0j] * (last_index + 1)
    for index, value in entries.items():
        coeffs[index] = value
    return PowerPoly(coeffs)


def read_coefficient_file(path):
    with open(path) as f:
        return parse_coefficient_lines(f, source=path)


def write_coefficient_file(p, path):
    entries = [(index, c) for index, c in enumerate(p.coeffs) if c != 0]
    if not entries:
        entries = [(0, 0j)]
    with open(path, "w") as f:
        for index, c in entries:
            f.write(f"{index},{c.real!r},{c.imag!r}\n")
