# SPDX-FileCopyrightText: 2022 Contributors to the Systocap project
#
# SPDX-License-Identifier: MPL-2.0

"""
Conversion of results to native python data, and the human and machine report formats
"""

import dataclasses
import json
import math
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Union

import numpy as np

from .capacity import CapacityCertificate, LowerBoundEvidence
from .embedding import EmbeddingReport
from .enum import ReportFormat
from .lattice import SystoleResult, UnimodularMatrix
from .norm import AxiomReport, GaugeSpec

Report = Dict[str, Any]


def convert_numpy_to_python(data: Any) -> Any:
    """
    Convert (nested) results to native python data: numpy arrays and scalars, enums, fractions, unimodular matrices,
    gauges and dataclasses are converted recursively; dict keys are kept.
    Args:
        data: Any result object

    Returns:
        JSON native data (dict, list, str, int, float, bool or None)
    """
    if isinstance(data, (bool, int, float, str)) or data is None:
        return data
    if isinstance(data, np.ndarray):
        return convert_numpy_to_python(data.tolist())
    if isinstance(data, np.generic):
        return data.item()
    if isinstance(data, Enum):
        return data.value
    if isinstance(data, Fraction):
        return int(data) if data.denominator == 1 else f"{data.numerator}/{data.denominator}"
    if isinstance(data, UnimodularMatrix):
        return data.to_python()
    if isinstance(data, GaugeSpec):
        return data.to_python()
    if isinstance(data, dict):
        return {str(key): convert_numpy_to_python(value) for key, value in data.items()}
    if isinstance(data, (list, tuple)):
        return [convert_numpy_to_python(value) for value in data]
    if dataclasses.is_dataclass(data):
        return {f.name: convert_numpy_to_python(getattr(data, f.name)) for f in dataclasses.fields(data)}
    raise TypeError(f"Cannot convert {type(data).__name__} to python data")


def convert_systole_to_python(result: SystoleResult) -> Dict[str, Any]:
    """
    The systole, its canonical minimizer and all minimizers
    """
    return convert_numpy_to_python(result)


def convert_embedding_report_to_python(report: EmbeddingReport) -> Dict[str, Any]:
    """
    An embedding report including its pass flag
    """
    data = convert_numpy_to_python(report)
    data["passed"] = report.passed
    return data


def convert_axiom_report_to_python(report: AxiomReport) -> Dict[str, Any]:
    """
    An axiom report including its pass flag
    """
    data = convert_numpy_to_python(report)
    data["passed"] = report.passed
    return data


def convert_lower_evidence_to_python(evidence: LowerBoundEvidence) -> Dict[str, Any]:
    """
    Lower bound evidence, with the pass flag of the injectivity check
    """
    data = convert_numpy_to_python(evidence)
    data["injectivity"]["passed"] = evidence.injectivity.passed
    return data


def convert_certificate_to_python(certificate: CapacityCertificate) -> Dict[str, Any]:
    """
    A capacity certificate with the nested reports
    """
    return {
        "value": certificate.value,
        "systole": convert_systole_to_python(certificate.systole),
        "basis": certificate.basis.to_python(),
        "widths": certificate.widths,
        "r1": certificate.r1,
        "upper_report": convert_embedding_report_to_python(certificate.upper_report),
        "lower_lattice_check": certificate.lower_lattice_check,
        "lower_evidence": convert_lower_evidence_to_python(certificate.lower_evidence),
        "case": certificate.case.value,
        "minorant": convert_numpy_to_python(certificate.minorant),
        "normalizing_map": convert_numpy_to_python(certificate.normalizing_map),
        "notes": list(certificate.notes),
        "equality_certified": certificate.equality_certified,
        "passed": certificate.passed,
    }


def _format_float(value: float) -> str:
    if not math.isfinite(value):
        return json.dumps("inf" if value > 0 else "-inf" if value < 0 else "nan")
    text = format(value, ".17g")
    if "." not in text and "e" not in text:
        text += ".0"
    return text


def _encode(data: Any, indent: int) -> str:
    padding = "  " * (indent + 1)
    if data is None:
        return "null"
    if isinstance(data, bool):
        return "true" if data else "false"
    if isinstance(data, int):
        return str(data)
    if isinstance(data, float):
        return _format_float(data)
    if isinstance(data, str):
        return json.dumps(data, ensure_ascii=False)
    if isinstance(data, dict):
        if not data:
            return "{}"
        items = [f"{padding}{json.dumps(str(key), ensure_ascii=False)}: {_encode(data[key], indent + 1)}"
                 for key in sorted(data)]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    if isinstance(data, list):
        if not data:
            return "[]"
        if all(not isinstance(x, (dict, list)) for x in data):
            return "[" + ", ".join(_encode(x, indent + 1) for x in data) + "]"
        return "[\n" + ",\n".join(padding + _encode(x, indent + 1) for x in data) + "\n" + "  " * indent + "]"
    raise TypeError(f"Cannot encode {type(data).__name__} in a machine report")


def _flatten(data: Any, prefix: str, rows: List[List[str]]) -> None:
    if isinstance(data, dict) and data:
        for key in data:
            _flatten(data[key], f"{prefix}.{key}" if prefix else str(key), rows)
    elif isinstance(data, list) and data and any(isinstance(x, dict) for x in data):
        for i, value in enumerate(data):
            _flatten(value, f"{prefix}[{i}]", rows)
    else:
        rows.append([prefix, _human_value(data)])


def _human_value(data: Any) -> str:
    if isinstance(data, float):
        return format(data, ".12g")
    if isinstance(data, list):
        return "[" + ", ".join(_human_value(x) for x in data) + "]"
    if data is None:
        return "-"
    return str(data)


def _human(report: Report) -> str:
    lines = [f"systocap {report.get('command', '')} report", ""]
    result = report.get("result", {})
    if isinstance(result, dict) and "value" in result:
        lines.append("value = 2·systole")
        lines.append("")
    rows: List[List[str]] = []
    for section in ("status", "result", "error", "tolerances", "citations"):
        if section in report:
            _flatten(report[section], section, rows)
    width = max((len(key) for key, _ in rows), default=0)
    lines += [f"  {key.ljust(width)}  {value}" for key, value in rows]
    return "\n".join(lines) + "\n"


def emit_report(report: Report, report_format: Union[ReportFormat, str]) -> str:
    """
    Render a report.

    Args:
        report: A report produced by systocap.cli.run()
        report_format: human (aligned key/value table) or machine (key-sorted JSON, reals with 17 significant digits)

    Raises:
        ValueError for an unknown format.

    Returns:
        The report text.
    """
    report_format = ReportFormat(report_format)
    data = convert_numpy_to_python(report)
    if report_format == ReportFormat.machine:
        return _encode(data, 0) + "\n"
    return _human(data)


def export_report(report_file: Path, report: Report, report_format: Union[ReportFormat, str] = ReportFormat.machine):
    """
    export a report
    Args:
        report_file: path to the report file
        report: The report
        report_format: The format, machine by default

    Returns:
        Save to file
    """
    with open(report_file, mode="w", encoding="utf-8") as file_pointer:
        file_pointer.write(emit_report(report, report_format))


def import_report(report_file: Path) -> Report:
    """
    import a machine format report
    Args:
        report_file: path to the report file

    Returns:
        The report as python data; non-finite reals are left as the strings "inf", "-inf" and "nan"
    """
    with open(report_file, mode="r", encoding="utf-8") as file_pointer:
        return json.load(file_pointer)
