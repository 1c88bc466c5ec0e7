# SPDX-FileCopyrightText: 2022 Contributors to the Systocap project
#
# SPDX-License-Identifier: MPL-2.0

"""
Command line interface

    systocap capacity --config norm.json --format machine

Exit status: 0 if all requested certificates pass, 1 if a certificate fails, 2 for invalid input or other errors.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import numpy as np

from .capacity import (
    HZ_CAPACITY_CITATION,
    LowerBoundStatus,
    capacity,
    classify_case,
    lower_certificate,
)
from .config import RunConfig, config_to_python, load_config, load_matrix, to_number
from .embedding import coordinate_widths, estimate_widths, verify_embedding_samples
from .enum import Command, ReportFormat
from .errors import ConfigError, SystocapError
from .lattice import systole, unimodular_complete
from .norm import GaugeSpec, check_gauge_axioms
from .report import (
    Report,
    convert_axiom_report_to_python,
    convert_certificate_to_python,
    convert_embedding_report_to_python,
    convert_lower_evidence_to_python,
    convert_systole_to_python,
    emit_report,
)
from .validation import ValidationException

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_ERROR = 2

STATUS_PASS = "pass"
STATUS_FAIL = "fail"
STATUS_ERROR = "error"

Outcome = Dict[str, Any]


def _minorant(config: RunConfig) -> Optional[np.ndarray]:
    if config.minorant_gram is None:
        return None
    return np.array([[float(to_number(x)) for x in row] for row in config.minorant_gram])


def _cmd_systole(spec: GaugeSpec, config: RunConfig) -> Outcome:
    # pylint: disable=unused-argument
    result = systole(spec)
    basis = unimodular_complete(result.u)
    return {
        "passed": True,
        "result": {
            "systole": convert_systole_to_python(result),
            "basis": basis.to_python(),
        },
    }


def _cmd_capacity(spec: GaugeSpec, config: RunConfig) -> Outcome:
    certificate = capacity(
        spec,
        samples=config.samples,
        seed=config.seed,
        minorant_gram=_minorant(config),
        assume_hz=config.assume_hz,
        tolerances=config.tolerances,
    )
    return {"passed": certificate.passed, "result": convert_certificate_to_python(certificate)}


def _upper(spec: GaugeSpec, config: RunConfig) -> Outcome:
    result = systole(spec)
    basis = unimodular_complete(result.u)
    widths = coordinate_widths(spec, basis)
    report = verify_embedding_samples(
        spec,
        basis,
        widths,
        config.samples,
        config.seed,
        step=config.tolerances["fd_step"],
        defect_tolerance=config.tolerances["symplectic_defect"],
    )
    return {
        "passed": report.passed,
        "result": {
            "systole": convert_systole_to_python(result),
            "basis": basis.to_python(),
            "widths": widths.tolist(),
            "r1": report.r1,
            "upper_bound": 2.0 * float(widths[0]),
            "upper_report": convert_embedding_report_to_python(report),
        },
    }


def _cmd_certify_upper(spec: GaugeSpec, config: RunConfig) -> Outcome:
    return _upper(spec, config)


def _cmd_verify_embedding(spec: GaugeSpec, config: RunConfig) -> Outcome:
    outcome = _upper(spec, config)
    # sampled lower bounds of the widths s_k = sup |p_k| over the polar body
    outcome["result"]["width_estimates"] = estimate_widths(spec, config.samples, config.seed).tolist()
    return outcome


def _cmd_certify_lower(spec: GaugeSpec, config: RunConfig) -> Outcome:
    result = systole(spec)
    evidence = lower_certificate(
        spec, result.s, min(config.samples, 1000), config.seed, open_body_tolerance=config.tolerances["open_body"]
    )
    classification = classify_case(
        spec, result.s, minorant_gram=_minorant(config), assume_hz=config.assume_hz, seed=config.seed
    )
    return {
        "passed": evidence.status != LowerBoundStatus.failed,
        "result": {
            "systole": convert_systole_to_python(result),
            "lower_bound": 2.0 * result.s,
            "lower_evidence": convert_lower_evidence_to_python(evidence),
            "case": classification.case.value,
            "minorant": classification.minorant,
            "normalizing_map": classification.normalizing_map,
            "notes": classification.notes,
        },
    }


def _cmd_axioms(spec: GaugeSpec, config: RunConfig) -> Outcome:
    report = check_gauge_axioms(spec, config.samples, config.seed, config.tolerances["axioms"])
    return {"passed": report.passed, "result": convert_axiom_report_to_python(report)}


COMMANDS: Dict[Command, Callable[[GaugeSpec, RunConfig], Outcome]] = {
    Command.systole: _cmd_systole,
    Command.capacity: _cmd_capacity,
    Command.certify_upper: _cmd_certify_upper,
    Command.certify_lower: _cmd_certify_lower,
    Command.verify_embedding: _cmd_verify_embedding,
    Command.axioms: _cmd_axioms,
}


def error_block(ex: BaseException) -> Dict[str, Any]:
    """
    A machine readable description of an error
    """
    block: Dict[str, Any] = {"type": type(ex).__name__, "message": str(ex)}
    for name in ("field", "line", "column", "box_size", "cap", "coordinate"):
        if getattr(ex, name, None) is not None:
            block[name] = getattr(ex, name)
    if isinstance(ex, ValidationException):
        block["errors"] = [str(error) for error in ex.errors]
    return block


def run(config: RunConfig) -> Report:
    """
    Execute the command of a configuration.

    Args:
        config: A resolved RunConfig

    Returns:
        The report: the command, the echoed configuration, the status (pass, fail or error), the result or an error
        block, the tolerances and the citations of hardcoded constants.
    """
    report: Report = {
        "command": config.command.value,
        "config": config_to_python(config),
        "tolerances": dict(config.tolerances),
    }
    if config.command in (Command.capacity, Command.certify_lower):
        report["citations"] = [HZ_CAPACITY_CITATION]
    try:
        spec = config.build_spec()
        outcome = COMMANDS[config.command](spec, config)
    except (SystocapError, ValidationException, ValueError, RuntimeError) as ex:
        logger.error("%s failed: %s", config.command.value, ex)
        report["status"] = STATUS_ERROR
        report["error"] = error_block(ex)
        return report
    report["status"] = STATUS_PASS if outcome["passed"] else STATUS_FAIL
    report["result"] = outcome["result"]
    return report


def exit_code(report: Report) -> int:
    """
    The process exit status of a report
    """
    return {STATUS_PASS: EXIT_PASS, STATUS_FAIL: EXIT_FAIL}.get(report.get("status"), EXIT_ERROR)


def build_parser() -> argparse.ArgumentParser:
    """
    The argument parser of the systocap command
    """
    parser = argparse.ArgumentParser(
        prog="systocap",
        description="Symplectic capacities of disc cotangent bundles of flat Finsler tori",
    )
    parser.add_argument("command", choices=[command.value for command in Command])
    parser.add_argument("--config", required=True, type=Path, help="JSON run configuration")
    parser.add_argument("--samples", type=int, help="number of samples (overrides the configuration)")
    parser.add_argument("--seed", type=int, help="random seed (overrides the configuration)")
    parser.add_argument(
        "--format", dest="report_format", default=ReportFormat.human.value, choices=[f.value for f in ReportFormat]
    )
    parser.add_argument("--minorant-gram", type=Path, help="JSON file with a Gram matrix of a Riemannian minorant")
    parser.add_argument("--log-level", default="WARNING", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    parser.add_argument("--output", type=Path, help="write the report to this file instead of stdout")
    return parser


def _resolve_config(args: argparse.Namespace) -> RunConfig:
    config = load_config(args.config)
    config.command = Command(args.command)
    if args.samples is not None:
        if args.samples < 1:
            raise ConfigError("Expected an integer of at least 1", field="samples")
        config.samples = args.samples
    if args.seed is not None:
        if args.seed < 0:
            raise ConfigError("Expected a non-negative integer", field="seed")
        config.seed = args.seed
    if args.minorant_gram is not None:
        config.minorant_gram = load_matrix(args.minorant_gram)
    return config


def main(argv: Optional[List[str]] = None) -> int:
    """
    Entry point of the systocap command
    """
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=args.log_level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")

    try:
        config = _resolve_config(args)
    except (ConfigError, OSError) as ex:
        logger.error("Invalid configuration: %s", ex)
        report: Report = {"command": args.command, "status": STATUS_ERROR, "error": error_block(ex)}
    else:
        report = run(config)

    text = emit_report(report, args.report_format)
    if args.output is not None:
        with open(args.output, mode="w", encoding="utf-8") as file_pointer:
            file_pointer.write(text)
    else:
        sys.stdout.write(text)
    return exit_code(report)
