# SPDX-FileCopyrightText: 2022 Contributors to the Systocap project
#
# SPDX-License-Identifier: MPL-2.0

import json
import os
import re
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
import pytest

from systocap.report import export_report

BASE_PATH = Path(__file__).parent.parent
DATA_PATH = BASE_PATH / "data"
OUPUT_PATH = BASE_PATH / "output"
EXPORT_OUTPUT = ("SYSTOCAP_VALIDATION_TEST_EXPORT" in os.environ) and (
    os.environ["SYSTOCAP_VALIDATION_TEST_EXPORT"] == "ON"
)

_INDEX = re.compile(r"^(\w+)\[(\d+)\]$")


def pytest_cases(data_dir: Optional[str] = None, test_cases: Optional[List[str]] = None):
    if data_dir is not None:
        relevant_commands = [data_dir]
    else:
        relevant_commands = sorted(item.name for item in DATA_PATH.iterdir() if item.is_dir())
    for command in relevant_commands:
        # list of all cases, directories in validation datasets
        command_dir = DATA_PATH / command
        if test_cases is None:
            collected_test_cases = sorted(item.name for item in command_dir.iterdir() if item.is_dir())
        else:
            collected_test_cases = test_cases
        for case_name in collected_test_cases:
            case_dir = command_dir / case_name
            with open(case_dir / "expected.json") as f:
                params = json.load(f)
            case_id = f"{command}-{case_name}"
            kwargs = {}
            if "fail" in params:
                kwargs["marks"] = pytest.mark.xfail(reason=params["fail"], raises=AssertionError)
            yield pytest.param(
                case_id,
                case_dir,
                command,
                params.get("rtol", 1e-12),
                params.get("atol", 1e-12),
                **kwargs,
                id=case_id,
            )


def bool_params(true_id: str, false_id: Optional[str] = None, **kwargs):
    if false_id is None:
        false_id = f"not-{true_id}"
    yield pytest.param(False, **kwargs, id=false_id)
    yield pytest.param(True, **kwargs, id=true_id)


def dict_params(params: Dict[Any, str], **kwargs):
    for value, param_id in params.items():
        yield pytest.param(value, **kwargs, id=param_id)


def import_case_data(data_path: Path) -> Dict[str, Any]:
    with open(data_path / "expected.json") as f:
        expected = json.load(f)
    return {"config": data_path / "config.json", "expected": expected}


def save_report(report_file: str, report: Dict[str, Any]):
    OUPUT_PATH.mkdir(parents=True, exist_ok=True)
    export_report(OUPUT_PATH / report_file, report)


def lookup(data: Any, path: str) -> Any:
    """
    Resolve a dotted path like 'result.systole.u[1]' in nested report data
    """
    for part in path.split("."):
        match = _INDEX.match(part)
        if match is None:
            data = data[part]
        else:
            data = data[match.group(1)][int(match.group(2))]
    return data


def compare_result(actual: Dict[str, Any], expected: Dict[str, Any], rtol: float, atol: float):
    for path, expected_value in expected.items():
        actual_value = lookup(actual, path)
        if isinstance(expected_value, bool) or isinstance(expected_value, str) or expected_value is None:
            matches = actual_value == expected_value
        elif isinstance(expected_value, float) or (
            isinstance(expected_value, list) and any(isinstance(x, float) for x in np.ravel(expected_value))
        ):
            matches = np.shape(actual_value) == np.shape(expected_value) and np.allclose(
                actual_value, expected_value, rtol=rtol, atol=atol
            )
        else:
            matches = actual_value == expected_value
        if not matches:
            msg = f"Value mismatch for {path} (rtol={rtol}, atol={atol})"
            print(f"\n{msg}")
            print("Actual:     ", actual_value)
            print("Expected:   ", expected_value)
            raise AssertionError(msg)


def euclidean_norm(vector: np.ndarray) -> float:
    return float(np.linalg.norm(vector))


def skewed_norm(vector: np.ndarray) -> float:
    # not reversible: f(e_1) = 1.5 but f(-e_1) = 0.5
    return float(np.linalg.norm(vector) + 0.5 * vector[0])


def l1_norm(vector: np.ndarray) -> float:
    return float(np.sum(np.abs(vector)))
