import csv
import io
import json
from dataclasses import dataclass, field, fields

from univalence.boundary import AlphaMode, SamplingConfig, SupEstimate
from univalence.errors import ConfigError
from univalence.utils import complex_from_list, complex_to_list


@dataclass(frozen=True)
class TheoremReport:
    """Full record of one verification run.

    hypothesis_margin = hypothesis_bound - hypothesis_sup.value. For Theorem 4 the
    "sup" is the negated minimum distance to the forbidden ray and the bound is the
    negated ray tolerance, so the same margin rule applies.

    univalent_implied is conclusion_bound < 1 for the f' - 1 conclusions only. Theorem 5
    bounds |f/z - 1|, which says nothing about Re f', so its reports always carry False
    and no min_re_fprime.
    """

    theorem_id: str
    n: int
    points: tuple
    mode: AlphaMode
    alpha: complex
    rho: float
    hypothesis_bound: float
    hypothesis_sup: SupEstimate
    hypothesis_ok: bool
    hypothesis_margin: float
    conclusion_bound: float
    conclusion_sup: SupEstimate
    conclusion_ok: bool
    w_sup: float
    w_ok: bool
    m_alpha: float = None
    corollary1_bound: float = None
    corollary1_ok: bool = None
    univalent_implied: bool = False
    min_re_fprime: float = None
    limits_at_zero: float = None
    ray_distance_min: float = None
    ray_distance_argmin: complex = None
    alpha_in_image_checked: bool = False
    example_chain: tuple = None
    chain_ok: bool = None
    config_echo: SamplingConfig = field(default_factory=SamplingConfig)

    def verified(self):
        return self.hypothesis_ok and self.conclusion_ok


_COMPLEX_FIELDS = {"alpha", "ray_distance_argmin"}
_SUP_FIELDS = {"hypothesis_sup", "conclusion_sup"}


# --- Flat records: nested values are flattened to dotted keys ---


def sup_estimate_to_record(estimate, prefix=""):
    return {
        f"{prefix}value": estimate.value,
        f"{prefix}argmax": complex_to_list(estimate.argmax),
        f"{prefix}radius": estimate.radius,
        f"{prefix}samples_used": estimate.samples_used,
        f"{prefix}profile": [list(pair) for pair in estimate.profile],
    }


def sup_estimate_from_record(record, prefix=""):
    return SupEstimate(
        value=record[f"{prefix}value"],
        argmax=complex_from_list(record[f"{prefix}argmax"]),
        radius=record[f"{prefix}radius"],
        samples_used=record[f"{prefix}samples_used"],
        profile=tuple(tuple(pair) for pair in record[f"{prefix}profile"]),
    )


def report_to_record(report):
    record = {}
    for report_field in fields(report):
        name = report_field.name
        value = getattr(report, name)
        if name in _SUP_FIELDS:
            record.update(sup_estimate_to_record(value, prefix=f"{name}."))
        elif name == "config_echo":
            for key, parameter in value.to_parameters().items():
                record[f"{name}.{key}"] = parameter
        elif name in _COMPLEX_FIELDS:
            record[name] = None if value is None else complex_to_list(value)
        elif name == "points":
            record[name] = [complex_to_list(z) for z in value]
        elif name == "mode":
            record[name] = value.value
        elif name == "example_chain":
            record[name] = None if value is None else list(value)
        else:
            record[name] = value
    return record


def report_from_record(record):
    values = {}
    for report_field in fields(TheoremReport):
        name = report_field.name
        if name in _SUP_FIELDS:
            values[name] = sup_estimate_from_record(record, prefix=f"{name}.")
        elif name == "config_echo":
            prefix = f"{name}."
            parameters = {
                key[len(prefix):]: value
                for key, value in record.items()
                if key.startswith(prefix)
            }
            values[name] = SamplingConfig.from_parameters(parameters)
        elif name not in record:
            raise ConfigError(f"Report record misses field '{name}'")
        elif name in _COMPLEX_FIELDS:
            value = record[name]
            values[name] = None if value is None else complex_from_list(value)
        elif name == "points":
            values[name] = tuple(complex_from_list(pair) for pair in record[name])
        elif name == "mode":
            values[name] = AlphaMode(record[name])
        elif name == "example_chain":
            value = record[name]
            values[name] = None if value is None else tuple(value)
        else:
            values[name] = record[name]
    return TheoremReport(**values)


# --- Output formats: JSON is canonical, CSV is a flattened projection ---


def records_to_json(records):
    if isinstance(records, dict):
        return json.dumps(records, indent=2) + "\n"
    return json.dumps(list(records), indent=2) + "\n"


def records_to_csv(records):
    if isinstance(records, dict):
        records = [records]
    header = []
    for record in records:
        for key in record:
            if key not in header:
                header.append(key)
    output = io.StringIO()
    writer = csv.writer(output, lineterminator="\n")
    writer.writerow(header)
    for record in records:
        writer.writerow(
            [json.dumps(record[key]) if key in record else "" for key in header]
        )
    return output.getvalue()


def records_from_csv(text):
    reader = csv.reader(io.StringIO(text))
    rows = list(reader)
    header = rows[0]
    return [
        {key: json.loads(cell) for key, cell in zip(header, row) if cell != ""}
        for row in rows[1:]
    ]


def render(records, output_format):
    if output_format == "json":
        return records_to_json(records)
    if output_format == "csv":
        return records_to_csv(records)
    raise ConfigError(f"Unknown output format '{output_format}'")
