import argparse
import json
import logging
import sys

from univalence.boundary import (
    Reduce,
    SamplingConfig,
    alpha_mean,
    check_rho,
    sup_on_circle,
    sup_on_disk,
)
from univalence.errors import ConfigError, VerificationError
from univalence.expressions import ExprKind, require_non_identity
from univalence.field import QUANTITIES, field_rows, field_to_csv
from univalence.jack import JACK_SAMPLING, probe, random_probe_suite
from univalence.monomial_examples import EXAMPLES, example_end_to_end
from univalence.power_series import ClassMember, PowerPoly, read_coefficient_file
from univalence.report import render, report_to_record, sup_estimate_to_record
from univalence.theorems.theorem1 import Theorem1Checker
from univalence.theorems.theorem2 import Theorem2Checker
from univalence.theorems.theorem3 import Theorem3Checker
from univalence.theorems.theorem4 import Theorem4Checker
from univalence.theorems.theorem5 import Theorem5Checker
from univalence.utils import parse_complex, point_from_turns

THEOREMS = {
    1: Theorem1Checker,
    2: Theorem2Checker,
    3: Theorem3Checker,
    4: Theorem4Checker,
    5: Theorem5Checker,
}

# Explicit boundary points are projected onto the unit circle within this distance.
POINT_SNAP_TOLERANCE = 1e-9

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_HYPOTHESIS_FAILED = 2

# Used for flags given neither on the command line nor in the --config file.
RUN_DEFAULTS = {
    "format": "json",
    "log_level": "INFO",
    "seed": 42,
    "trials": 100,
    "n_range": "1,3",
    "degree_range": "0,6",
    "radii": "0.5,0.9",
    "tol": 1e-6,
    "resolution": 64,
    "quantity": "fprime-minus-1",
    "reduce": "modulus",
}

SAMPLING_FLAGS = ("angular_samples", "refine_iters", "epsilon", "inner_cutoff")
# Comma-separated flags that a --config file may also give as JSON lists.
LIST_FLAGS = {"coeffs", "points", "radius_schedule", "radii", "n_range", "degree_range"}
LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _float_list(text, what):
    try:
        return [float(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise ConfigError(f"{what} must be a comma-separated list of numbers: '{text}'")


def _int_pair(text, what):
    values = _float_list(text, what)
    if len(values) != 2 or any(int(v) != v for v in values):
        raise ConfigError(f"{what} must be two integers 'low,high': '{text}'")
    return int(values[0]), int(values[1])


def parse_coefficients(text):
    """`0,1,0.2` or `0,1,0+0.2i`: coefficient j at position j."""
    return PowerPoly([parse_complex(item) for item in text.split(",")])


def parse_turn_points(text):
    return tuple(point_from_turns(t) for t in _float_list(text, "--points"))


def parse_xy_points(text):
    """`1,0;0,1` as explicit [re, im] pairs, snapped onto the unit circle."""
    points = []
    for pair in text.split(";"):
        values = _float_list(pair, "--points-xy")
        if len(values) != 2:
            raise ConfigError(f"Boundary point '{pair}' must be 're,im'")
        z = complex(values[0], values[1])
        if abs(abs(z) - 1) > POINT_SNAP_TOLERANCE:
            raise ConfigError(f"Boundary point {z} is not on the unit circle")
        points.append(z / abs(z))
    return tuple(points)


class VerificationRunner:
    def __init__(self, stdout=None):
        logging.debug("Init VerificationRunner")
        self.stdout = stdout if stdout is not None else sys.stdout
        self.output_format = RUN_DEFAULTS["format"]
        self.output_path = None

    def run(self, argv=None):
        """This is called when running `python3 -m univalence`; returns the exit code."""
        logging.basicConfig(stream=sys.stderr, format="%(levelname)s %(message)s")
        logging.getLogger().setLevel(logging.INFO)
        try:
            args = self._parse_command_line_args(argv)
            logging.getLogger().setLevel(args.log_level)
            logging.info(f"Starting {args.command}")
            return self.COMMANDS[args.command](self, args)
        except VerificationError as e:
            logging.error(f"{e.code}: {e}")
            record = render(e.to_record(), self.output_format)
            try:
                self._emit(record)
            except ConfigError:
                self.stdout.write(record)
            return e.exit_status

    def _emit(self, text):
        if self.output_path:
            try:
                with open(self.output_path, "w") as f:
                    f.write(text)
            except OSError as e:
                raise ConfigError(f"Cannot write output file {self.output_path}: {e}")
        else:
            self.stdout.write(text)

    # --- Commands ---

    def cmd_verify(self, args):
        if args.theorem not in THEOREMS:
            raise ConfigError(
                f"verify needs --theorem in {sorted(THEOREMS)}, got {args.theorem}"
            )
        checker_class = THEOREMS[args.theorem]
        parameters = {}
        if args.ray_tol is not None:
            if checker_class is not Theorem4Checker:
                raise ConfigError("--ray-tol only applies to theorem 4")
            parameters["ray_tol"] = args.ray_tol
        if args.rho is None:
            raise ConfigError("verify needs --rho")
        check_rho(args.rho)

        f = self._function(args)
        checker = checker_class(self._sampling_config(args), parameters)
        if checker.requires_non_identity:
            require_non_identity(f)
        spec = alpha_mean(f, self._points(args), checker.mode).with_rho(args.rho)
        report = checker.check(f, spec)
        self._emit(render(report_to_record(report), self.output_format))
        return self._report_status(report)

    def cmd_example(self, args):
        if args.id is None or args.n is None or args.a is None:
            raise ConfigError("example needs --id, --n and --a")
        report = example_end_to_end(
            args.id, args.n, parse_complex(args.a), self._sampling_config(args)
        )
        logging.info(f"Bound chain {report.example_chain}: {report.chain_ok}")
        self._emit(render(report_to_record(report), self.output_format))
        status = self._report_status(report)
        if status == EXIT_OK and not report.chain_ok:
            return EXIT_FAILURE
        return status

    def cmd_jack_probe(self, args):
        cfg = self._sampling_config(args, JACK_SAMPLING.to_parameters())
        if args.coeffs is not None or args.coeff_file is not None:
            if args.radius is None:
                raise ConfigError("A single probe needs --radius")
            result = probe(self._series(args), args.radius, cfg, args.tol)
            self._emit(render(result.to_record(), self.output_format))
            return EXIT_OK if result.passed() else EXIT_HYPOTHESIS_FAILED

        summary = random_probe_suite(
            args.seed,
            args.trials,
            n_range=_int_pair(args.n_range, "--n-range"),
            degree_range=_int_pair(args.degree_range, "--degree-range"),
            r_list=_float_list(args.radii, "--radii"),
            tol=args.tol,
            cfg=cfg,
        )
        self._emit(render(summary, self.output_format))
        return EXIT_OK if summary["fail_count"] == 0 else EXIT_HYPOTHESIS_FAILED

    def cmd_sup(self, args):
        if args.expr is None:
            raise ConfigError("sup needs --expr")
        alpha = parse_complex(args.alpha) if args.alpha is not None else None
        kind = ExprKind.from_name(args.expr, alpha)
        reduce = self._reduce(args.reduce)
        f = self._function(args)
        cfg = self._sampling_config(args)
        if args.radius is None:
            estimate = sup_on_disk(kind, f, cfg, reduce)
        else:
            estimate = sup_on_circle(kind, f, args.radius, cfg, reduce)
        record = {"expr": kind.name, "reduce": reduce.value}
        record.update(sup_estimate_to_record(estimate))
        self._emit(render(record, self.output_format))
        return EXIT_OK

    def cmd_field(self, args):
        f = self._function(args)
        epsilon = self._sampling_config(args).epsilon
        rows = field_rows(f, args.quantity, args.resolution, epsilon)
        self._emit(field_to_csv(rows))
        return EXIT_OK

    COMMANDS = {
        "verify": cmd_verify,
        "example": cmd_example,
        "jack-probe": cmd_jack_probe,
        "sup": cmd_sup,
        "field": cmd_field,
    }

    # --- Inputs ---

    def _report_status(self, report):
        if not report.hypothesis_ok:
            return EXIT_HYPOTHESIS_FAILED
        if not report.conclusion_ok:
            return EXIT_FAILURE
        return EXIT_OK

    def _reduce(self, name):
        for reduce in Reduce:
            if reduce.value == name:
                return reduce
        raise ConfigError(f"Unknown reduction '{name}', expected modulus or real")

    def _series(self, args):
        if args.coeffs is not None and args.coeff_file is not None:
            raise ConfigError("Give either --coeffs or --coeff-file, not both")
        if args.coeffs is not None:
            return parse_coefficients(args.coeffs)
        if args.coeff_file is not None:
            return read_coefficient_file(args.coeff_file)
        raise ConfigError("A function is needed: --coeffs or --coeff-file")

    def _function(self, args):
        poly = self._series(args)
        if args.n is None:
            return ClassMember.from_poly(poly)
        return ClassMember(poly, args.n)

    def _points(self, args):
        if args.points is not None and args.points_xy is not None:
            raise ConfigError("Give either --points or --points-xy, not both")
        if args.points is not None:
            return parse_turn_points(args.points)
        if args.points_xy is not None:
            return parse_xy_points(args.points_xy)
        raise ConfigError("Boundary points are needed: --points or --points-xy")

    def _sampling_config(self, args, base_parameters=None):
        parameters = dict(base_parameters or {})
        for key in SAMPLING_FLAGS:
            value = getattr(args, key)
            if value is not None:
                parameters[key] = value
        if args.radius_schedule is not None:
            parameters["radius_schedule"] = _float_list(
                args.radius_schedule, "--radius-schedule"
            )
        elif "epsilon" in parameters:
            parameters["radius_schedule"] = None
        return SamplingConfig.from_parameters(parameters)

    # --- Command line ---

    def _build_parser(self):
        parser = _ArgumentParser(
            prog="python3 -m univalence",
            description="Numerical verification of sufficient conditions for "
            "|f'(z) - 1| < rho |1 - alpha| on the unit disk.",
        )
        parser.add_argument("--config", help="JSON file with default flag values")
        parser.add_argument(
            "--log-level", choices=LOG_LEVELS
        )
        subparsers = parser.add_subparsers(dest="command")

        common = _ArgumentParser(add_help=False)
        source = common.add_argument_group("function")
        source.add_argument(
            "--coeffs",
            help="Coefficients a_0,a_1,... of f; each is 're' or 're+imi' (e.g. 0+0.2i)",
        )
        source.add_argument(
            "--coeff-file", help="File with one 'index,re,im' line per term"
        )
        source.add_argument("--n", type=int, help="Class order (default: largest)")
        sampling = common.add_argument_group("sampling")
        sampling.add_argument("--angular-samples", type=int)
        sampling.add_argument("--refine-iters", type=int)
        sampling.add_argument("--epsilon", type=float)
        sampling.add_argument("--inner-cutoff", type=float)
        sampling.add_argument("--radius-schedule", help="Comma-separated radii")
        output = common.add_argument_group("output")
        output.add_argument("--format", choices=["json", "csv"])
        output.add_argument("--output", help="Output file (default: stdout)")

        verify = subparsers.add_parser("verify", parents=[common])
        verify.add_argument("--theorem", type=int, choices=sorted(THEOREMS))
        verify.add_argument("--points", help="Boundary points as turns, e.g. 0,0.25")
        verify.add_argument("--points-xy", help="Boundary points as 're,im;re,im'")
        verify.add_argument("--rho", type=float)
        verify.add_argument("--ray-tol", type=float)

        example = subparsers.add_parser("example", parents=[common])
        example.add_argument("--id", type=int, choices=sorted(EXAMPLES))
        example.add_argument("--a", help="Coefficient a_{n+1} as 're' or 're+imi'")

        jack = subparsers.add_parser("jack-probe", parents=[common])
        jack.add_argument("--seed", type=int)
        jack.add_argument("--trials", type=int)
        jack.add_argument("--n-range", help="Vanishing orders 'low,high'")
        jack.add_argument("--degree-range", help="Extra degrees 'low,high'")
        jack.add_argument("--radii", help="Comma-separated probe radii")
        jack.add_argument("--radius", type=float, help="Radius of a single probe")
        jack.add_argument("--tol", type=float)

        sup = subparsers.add_parser("sup", parents=[common])
        sup.add_argument("--expr", help="T1..T5, FprimeMinus1, FOverZMinus1, ...")
        sup.add_argument("--alpha", help="Parameter of FprimeMinusAlpha/FOverZMinusBeta")
        sup.add_argument("--reduce", choices=[r.value for r in Reduce])
        sup.add_argument("--radius", type=float, help="Single circle (default: disk)")

        field = subparsers.add_parser("field", parents=[common])
        field.add_argument("--quantity", choices=sorted(QUANTITIES))
        field.add_argument("--resolution", type=int)

        self.flag_types = {
            action.dest: action.type
            for subparser in [parser] + list(subparsers.choices.values())
            for action in subparser._actions
        }
        self.flag_names = set(self.flag_types)
        return parser

    def _parse_command_line_args(self, argv):
        parser = self._build_parser()
        args = parser.parse_args(argv)
        if args.command is None:
            raise ConfigError(f"A command is needed: {', '.join(self.COMMANDS)}")

        defaults = dict(RUN_DEFAULTS)
        if args.config:
            defaults.update(self._read_config(args.config))
        for key, value in defaults.items():
            if getattr(args, key, None) is None:
                setattr(args, key, value)
        args.log_level = str(args.log_level).upper()
        if args.log_level not in LOG_LEVELS:
            raise ConfigError(f"Unknown log level '{args.log_level}'")
        if args.format not in ("json", "csv"):
            raise ConfigError(f"Unknown output format '{args.format}'")

        self.output_format = args.format
        self.output_path = args.output
        return args

    def _read_config(self, path):
        logging.info(f"Using config file {path}")
        try:
            with open(path) as f:
                config = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"Cannot read config file {path}: {e}")
        if not isinstance(config, dict):
            raise ConfigError(f"Config file {path} must hold a JSON object")
        config = {key.replace("-", "_"): value for key, value in config.items()}
        unknown = set(config) - self.flag_names - {"config", "command"}
        if unknown:
            raise ConfigError(f"Unknown keys in {path}: {sorted(unknown)}")
        return {
            key: self._config_value(path, key, value) for key, value in config.items()
        }

    def _config_value(self, path, key, value):
        if key in LIST_FLAGS and isinstance(value, list):
            value = ",".join(str(item) for item in value)
        if value is None:
            return value
        expected = self.flag_types.get(key)
        if expected is int:
            valid = isinstance(value, int) and not isinstance(value, bool)
        elif expected is float:
            valid = isinstance(value, (int, float)) and not isinstance(value, bool)
        else:
            valid = isinstance(value, str)
        if not valid:
            raise ConfigError(f"{path}: '{key}' has the wrong type: {value!r}")
        return value
