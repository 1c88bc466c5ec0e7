# SPDX-FileCopyrightText: 2022 Contributors to the Systocap project
#
# SPDX-License-Identifier: MPL-2.0

"""
Run configurations

A configuration is a JSON document:

    {
        "norm": {"family": "ellipsoid", "gram": [[5, 3], [3, 2]]},
        "command": "capacity",
        "samples": 10000,
        "seed": 0,
        "tolerances": {"symplectic_defect": 1e-6},
        "minorant_gram": [[1, 0], [0, 1]],
        "assume_hz": true
    }

Parsing is strict: unknown fields are rejected, booleans are never numbers and rationals are written as strings
"a/b" so that they do not pass through floating point.
"""

import importlib
import json
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Union

from .enum import Command, GaugeFamily
from .errors import ConfigError
from .validation import ValidationException

DEFAULT_TOLERANCES: Dict[str, float] = {
    "axioms": 1e-9,
    "minorant": 1e-9,
    "open_body": 1e-12,
    "symplectic_defect": 1e-6,
    "fd_step": 1e-5,
}
ORACLE_AXIOM_TOLERANCE = 1e-6
DEFAULT_SAMPLES = 10000
DEFAULT_SEED = 0
DEFAULT_COMMAND = Command.capacity

Number = Union[int, float, str]
NormDescription = Dict[str, Any]

_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*/\s*(\d+)\s*$")

CONFIG_FIELDS = {"norm", "command", "samples", "seed", "tolerances", "minorant_gram", "assume_hz"}
NORM_FIELDS = {
    GaugeFamily.lp: ({"dim", "p"}, {"weight"}),
    GaugeFamily.ellipsoid: ({"gram"}, {"dim"}),
    GaugeFamily.polytope_v: ({"vertices"}, {"dim"}),
    GaugeFamily.polytope_h: ({"normals", "offsets"}, {"dim"}),
    GaugeFamily.oracle: ({"dim", "callback"}, set()),
    GaugeFamily.pullback: ({"base", "matrix"}, set()),
}


@dataclass
class RunConfig:
    """
    A fully resolved run configuration. The norm description holds JSON native values only (rationals as canonical
    "a/b" strings), so that a configuration echoed in a report parses back into an equal RunConfig.
    """

    norm: NormDescription
    command: Command = DEFAULT_COMMAND
    samples: int = DEFAULT_SAMPLES
    seed: int = DEFAULT_SEED
    tolerances: Dict[str, float] = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    minorant_gram: Optional[List[List[Number]]] = None
    assume_hz: bool = True

    def build_spec(self):
        """
        The GaugeSpec of the norm description
        """
        return build_gauge(self.norm)


def to_number(value: Number) -> Union[int, float, Fraction]:
    """
    Convert a normalized number to python: rational strings become Fractions, "inf" becomes math.inf
    """
    if isinstance(value, str):
        if value == "inf":
            return math.inf
        return Fraction(value)
    return value


def _number(value: Any, path: str, allow_inf: bool = False) -> Number:
    if isinstance(value, bool):
        raise ConfigError("Expected a number, got a boolean", field=path)
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ConfigError("Expected a finite number", field=path)
        return value
    if isinstance(value, str):
        if value == "inf" and allow_inf:
            return value
        match = _RATIONAL.match(value)
        if match is None:
            raise ConfigError(f"Expected a number or a rational 'a/b', got '{value}'", field=path)
        if int(match.group(2)) == 0:
            raise ConfigError("Zero denominator", field=path)
        rational = Fraction(int(match.group(1)), int(match.group(2)))
        return int(rational) if rational.denominator == 1 else f"{rational.numerator}/{rational.denominator}"
    raise ConfigError(f"Expected a number, got {type(value).__name__}", field=path)


def _integer(value: Any, path: str, minimum: int) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError("Expected an integer", field=path)
    if value < minimum:
        raise ConfigError(f"Expected an integer of at least {minimum}, got {value}", field=path)
    return value


def _vector(value: Any, path: str) -> List[Number]:
    if not isinstance(value, list):
        raise ConfigError("Expected a list of numbers", field=path)
    return [_number(x, f"{path}[{i}]") for i, x in enumerate(value)]


def _matrix(value: Any, path: str) -> List[List[Number]]:
    if not isinstance(value, list) or not value:
        raise ConfigError("Expected a non-empty list of rows", field=path)
    rows = [_vector(row, f"{path}[{i}]") for i, row in enumerate(value)]
    if len({len(row) for row in rows}) != 1:
        raise ConfigError("Rows have different lengths", field=path)
    return rows


def _check_dimension(description: NormDescription, size: int, path: str) -> None:
    if "dim" in description and description["dim"] != size:
        raise ConfigError(
            f"Declared dimension {description['dim']} does not match the data dimension {size}", field=path
        )


def parse_norm(value: Any, path: str = "norm") -> NormDescription:
    """
    Normalize a norm description, see the module documentation of systocap.config for the schema.

    Raises:
        ConfigError for schema violations.
    """
    if not isinstance(value, dict):
        raise ConfigError("Expected an object", field=path)
    if "family" not in value:
        raise ConfigError("Missing field", field=f"{path}.family")
    try:
        family = GaugeFamily(value["family"])
    except (ValueError, TypeError) as ex:
        raise ConfigError(f"Unknown gauge family {value['family']!r}", field=f"{path}.family") from ex

    required, optional = NORM_FIELDS[family]
    for key in value:
        if key != "family" and key not in required and key not in optional:
            raise ConfigError(f"Unknown field for the {family.value} family", field=f"{path}.{key}")
    for key in required:
        if key not in value:
            raise ConfigError(f"Missing field for the {family.value} family", field=f"{path}.{key}")

    description: NormDescription = {"family": family.value}
    if "dim" in value:
        description["dim"] = _integer(value["dim"], f"{path}.dim", 1)
    if family == GaugeFamily.lp:
        description["p"] = _number(value["p"], f"{path}.p", allow_inf=True)
        if "weight" in value:
            description["weight"] = _number(value["weight"], f"{path}.weight")
    elif family == GaugeFamily.ellipsoid:
        description["gram"] = _matrix(value["gram"], f"{path}.gram")
        _check_dimension(description, len(description["gram"]), f"{path}.gram")
    elif family == GaugeFamily.polytope_v:
        description["vertices"] = _matrix(value["vertices"], f"{path}.vertices")
        _check_dimension(description, len(description["vertices"][0]), f"{path}.vertices")
    elif family == GaugeFamily.polytope_h:
        description["normals"] = _matrix(value["normals"], f"{path}.normals")
        description["offsets"] = _vector(value["offsets"], f"{path}.offsets")
        _check_dimension(description, len(description["normals"][0]), f"{path}.normals")
    elif family == GaugeFamily.oracle:
        if not isinstance(value["callback"], str) or ":" not in value["callback"]:
            raise ConfigError("Expected a 'package.module:function' reference", field=f"{path}.callback")
        description["callback"] = value["callback"]
    else:
        description["base"] = parse_norm(value["base"], f"{path}.base")
        description["matrix"] = _matrix(value["matrix"], f"{path}.matrix")
        for i, row in enumerate(description["matrix"]):
            for j, entry in enumerate(row):
                if not isinstance(entry, int):
                    raise ConfigError("Expected an integer matrix", field=f"{path}.matrix[{i}][{j}]")
    return description


def resolve_callback(reference: str) -> Callable:
    """
    Import the function of a 'package.module:function' reference
    """
    module_name, _, attribute = reference.partition(":")
    try:
        module = importlib.import_module(module_name)
        callback = module
        for part in attribute.split("."):
            callback = getattr(callback, part)
    except (ImportError, AttributeError) as ex:
        raise ConfigError(f"Cannot resolve callback '{reference}': {ex}", field="norm.callback") from ex
    return callback


def _exact_or_float(rows: List[List[Number]]) -> List[List[Any]]:
    if any(isinstance(x, float) for row in rows for x in row):
        return [[float(to_number(x)) for x in row] for row in rows]
    return [[Fraction(to_number(x)) for x in row] for row in rows]


def build_gauge(description: NormDescription):
    """
    Build the GaugeSpec of a normalized norm description
    """
    # pylint: disable=import-outside-toplevel
    from .lattice import pullback_gauge
    from .norm import EllipsoidGauge, LpGauge, OracleGauge, PolytopeHGauge, PolytopeVGauge

    family = GaugeFamily(description["family"])
    if family == GaugeFamily.lp:
        return LpGauge(
            description["dim"], float(to_number(description["p"])), float(to_number(description.get("weight", 1)))
        )
    if family == GaugeFamily.ellipsoid:
        return EllipsoidGauge(_exact_or_float(description["gram"]))
    if family == GaugeFamily.polytope_v:
        return PolytopeVGauge([[float(to_number(x)) for x in row] for row in description["vertices"]])
    if family == GaugeFamily.polytope_h:
        return PolytopeHGauge(
            [[float(to_number(x)) for x in row] for row in description["normals"]],
            [float(to_number(x)) for x in description["offsets"]],
        )
    if family == GaugeFamily.oracle:
        callback = description["callback"]
        return OracleGauge(description["dim"], resolve_callback(callback), name=callback)
    return pullback_gauge(build_gauge(description["base"]), description["matrix"])


def parse_config(text: str) -> RunConfig:
    """
    Parse and validate a configuration document.

    Args:
        text: The JSON document

    Raises:
        ConfigError with the offending field (or line and column for syntax errors).

    Returns:
        The resolved RunConfig, with defaults applied.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as ex:
        raise ConfigError(f"Invalid JSON: {ex.msg}", line=ex.lineno, column=ex.colno) from ex
    if not isinstance(data, dict):
        raise ConfigError("The configuration should be a JSON object")
    for key in data:
        if key not in CONFIG_FIELDS:
            raise ConfigError("Unknown field", field=key)
    if "norm" not in data:
        raise ConfigError("Missing field", field="norm")

    norm = parse_norm(data["norm"])
    try:
        spec = build_gauge(norm)
    except ConfigError:
        raise
    except ValidationException as ex:
        raise ConfigError(str(ex), field="norm") from ex
    except (KeyError, TypeError, ValueError) as ex:
        raise ConfigError(f"Invalid norm data: {ex}", field="norm") from ex

    config = RunConfig(norm=norm)
    if "command" in data:
        try:
            config.command = Command(data["command"])
        except ValueError as ex:
            raise ConfigError(f"Unknown command {data['command']!r}", field="command") from ex
    if "samples" in data:
        config.samples = _integer(data["samples"], "samples", 1)
    if "seed" in data:
        config.seed = _integer(data["seed"], "seed", 0)

    if spec.family == GaugeFamily.oracle:
        config.tolerances["axioms"] = ORACLE_AXIOM_TOLERANCE
    tolerances = data.get("tolerances", {})
    if not isinstance(tolerances, dict):
        raise ConfigError("Expected an object", field="tolerances")
    for name, value in tolerances.items():
        if name not in DEFAULT_TOLERANCES:
            raise ConfigError("Unknown tolerance", field=f"tolerances.{name}")
        number = float(to_number(_number(value, f"tolerances.{name}")))
        if number <= 0.0:
            raise ConfigError("Tolerances should be positive", field=f"tolerances.{name}")
        config.tolerances[name] = number

    if data.get("minorant_gram") is not None:
        config.minorant_gram = _matrix(data["minorant_gram"], "minorant_gram")
        if len(config.minorant_gram) != spec.dimension:
            raise ConfigError(
                f"Gram matrix of size {len(config.minorant_gram)} for a norm of dimension {spec.dimension}",
                field="minorant_gram",
            )
    if "assume_hz" in data:
        if not isinstance(data["assume_hz"], bool):
            raise ConfigError("Expected a boolean", field="assume_hz")
        config.assume_hz = data["assume_hz"]
    return config


def config_to_python(config: RunConfig) -> Dict[str, Any]:
    """
    The configuration as JSON native data; parse_config() of its JSON text reproduces the configuration
    """
    data: Dict[str, Any] = {
        "norm": config.norm,
        "command": config.command.value,
        "samples": config.samples,
        "seed": config.seed,
        "tolerances": dict(config.tolerances),
        "assume_hz": config.assume_hz,
    }
    if config.minorant_gram is not None:
        data["minorant_gram"] = config.minorant_gram
    return data


def load_config(config_file: Path) -> RunConfig:
    """
    Read and parse a configuration file
    """
    with open(config_file, mode="r", encoding="utf-8") as file_pointer:
        return parse_config(file_pointer.read())


def load_matrix(matrix_file: Path) -> List[List[Number]]:
    """
    Read a matrix (a JSON list of rows) from a file, e.g. a minorant Gram matrix
    """
    with open(matrix_file, mode="r", encoding="utf-8") as file_pointer:
        text = file_pointer.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as ex:
        raise ConfigError(f"Invalid JSON in {matrix_file}: {ex.msg}", line=ex.lineno, column=ex.colno) from ex
    return _matrix(data, "minorant_gram")
