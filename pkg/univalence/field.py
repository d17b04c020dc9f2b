import csv
import io
import logging

import numpy as np

from univalence.errors import ConfigError, PoleError
from univalence.expressions import (
    FPRIME_MINUS_1,
    T1,
    T3,
    T4,
    eval_expr_many,
    ray_distance,
)

MIN_RESOLUTION = 16


def _modulus(kind):
    return lambda f, zs: np.abs(eval_expr_many(kind, f, zs))


def _t3_real(f, zs):
    return np.real(eval_expr_many(T3, f, zs))


def _t4_ray_distance(f, zs):
    return ray_distance(eval_expr_many(T4, f, zs), f.n)


# Plot quantities: name -> function of (f, points) returning real values.
QUANTITIES = {
    "fprime-minus-1": _modulus(FPRIME_MINUS_1),
    "t1": _modulus(T1),
    "t3-real": _t3_real,
    "t4-ray-distance": _t4_ray_distance,
}


def grid_axis(resolution):
    """x_i = -1 + 2i/N for i = 0..N-1."""
    return -1 + 2 * np.arange(resolution) / resolution


def _evaluate_row(quantity, f, zs):
    try:
        return list(quantity(f, zs))
    except PoleError as e:
        logging.debug(f"Pole at {e.z} in field row, evaluating points one by one")
    values = []
    for z in zs:
        try:
            values.append(quantity(f, np.array([z]))[0])
        except PoleError:
            values.append(None)
    return values


def field_rows(f, quantity_name, resolution, epsilon):
    """(x, y, value) over the N x N grid on [-1, 1]^2, rows with y outermost.

    Points outside the (1 - epsilon)-disk and poles have value None.
    """
    if quantity_name not in QUANTITIES:
        raise ConfigError(
            f"Unknown field quantity '{quantity_name}', "
            f"expected one of {sorted(QUANTITIES)}"
        )
    if int(resolution) != resolution or resolution < MIN_RESOLUTION:
        raise ConfigError(
            f"Grid resolution must be >= {MIN_RESOLUTION}, got {resolution}"
        )
    if not 0 < epsilon < 1:
        raise ConfigError(f"epsilon must lie in (0, 1), got {epsilon}")
    quantity = QUANTITIES[quantity_name]
    axis = grid_axis(int(resolution))
    r_max_squared = (1 - epsilon) ** 2

    rows = []
    for y in axis:
        inside = [x for x in axis if x * x + y * y <= r_max_squared]
        zs = np.array([complex(x, y) for x in inside], dtype=complex)
        values = dict(zip(inside, _evaluate_row(quantity, f, zs))) if inside else {}
        for x in axis:
            value = values.get(x)
            rows.append((float(x), float(y), None if value is None else float(value)))
    logging.info(f"Field {quantity_name} of {f}: {len(rows)} grid points")
    return rows


def field_to_csv(rows):
    output = io.StringIO()
    writer = csv.writer(output, lineterminator="\n")
    writer.writerow(["x", "y", "value"])
    for x, y, value in rows:
        writer.writerow([repr(x), repr(y), "" if value is None else repr(value)])
    return output.getvalue()
