import cmath
import math
import os
import re
from concurrent.futures import ThreadPoolExecutor

from univalence.errors import ConfigError, NonFiniteValue

# --- Tolerances ---
# Evaluation is allowed on the closed disk plus this slack.
DISK_SLACK = 1e-12
# Boundary points must satisfy ||z| - 1| <= BOUNDARY_TOLERANCE.
BOUNDARY_TOLERANCE = 1e-12
# alpha (beta) closer than this to 1 is treated as alpha = 1.
DEGENERACY_TOLERANCE = 1e-12
# Denominators below POLE_TOLERANCE * (1 + |numerator|) are poles.
POLE_TOLERANCE = 1e-12
# Allowed decrease of per-circle sups along an increasing radius schedule.
MONOTONICITY_TOLERANCE = 1e-9

THREADS_VARIABLE = "GFT_THREADS"


# --- Angles ---
def turns_to_radians(turns):
    return 2 * math.pi * turns


def normalize_turns(turns):
    turns = math.fmod(turns, 1.0)
    if turns < 0:
        turns += 1.0
    # fmod(-0.0, 1) and tiny negatives rounding to 1.0
    return 0.0 if turns >= 1.0 else turns + 0.0


# Quarter turns are mapped to exact points so that the worked examples keep exact
# boundary averages.
_QUARTER_TURN_POINTS = {0.0: 1 + 0j, 0.25: 1j, 0.5: -1 + 0j, 0.75: -1j}


def point_from_turns(turns):
    """Returns e^{2 pi i t} for t given in turns (fractions of a revolution)."""
    turns = normalize_turns(turns)
    if turns in _QUARTER_TURN_POINTS:
        return _QUARTER_TURN_POINTS[turns]
    return cmath.exp(1j * turns_to_radians(turns))


def point_to_turns(z):
    return normalize_turns(cmath.phase(z) / (2 * math.pi))


# --- Complex values ---
def ensure_finite(value, what="value"):
    value = complex(value)
    if not cmath.isfinite(value):
        raise NonFiniteValue(f"{what} is not finite: {value}")
    return value


def complex_to_list(value):
    return [value.real, value.imag]


def complex_from_list(pair):
    if len(pair) != 2:
        raise ConfigError(f"Complex value must be a [re, im] pair, got {pair}")
    return complex(float(pair[0]), float(pair[1]))


_COMPLEX_PATTERN = re.compile(
    r"^\s*(?P<re>[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)"
    r"(?:(?P<im>[+-](\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)i)?\s*$"
)


def parse_complex(text):
    """Parses `re` or `re+imi` (e.g. `0.2`, `0+0.2i`, `1.5-3e-2i`)."""
    match = _COMPLEX_PATTERN.match(text)
    if not match:
        raise ConfigError(f"Cannot parse complex value '{text}' (expected re or re+imi)")
    imaginary = float(match.group("im")) if match.group("im") else 0.0
    return ensure_finite(complex(float(match.group("re")), imaginary), text)


def format_complex(value):
    sign = "-" if math.copysign(1.0, value.imag) < 0 else "+"
    return f"{value.real!r}{sign}{abs(value.imag)!r}i"


# --- Parallelism ---
def worker_count():
    value = os.environ.get(THREADS_VARIABLE, "0").strip() or "0"
    try:
        threads = int(value)
    except ValueError:
        raise ConfigError(f"{THREADS_VARIABLE} must be an integer, got '{value}'")
    if threads < 0:
        raise ConfigError(f"{THREADS_VARIABLE} must be >= 0, got {threads}")
    if threads == 0:
        threads = os.cpu_count() or 1
    return threads


def ordered_map(function, items):
    """Maps `function` over `items` on the worker pool, keeping input order."""
    items = list(items)
    workers = min(worker_count(), len(items))
    if workers <= 1:
        return [function(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(function, items))
