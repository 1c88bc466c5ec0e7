# SPDX-FileCopyrightText: 2022 Contributors to the Systocap project
#
# SPDX-License-Identifier: MPL-2.0

"""
Gauge Data Validation Functions.

Although all functions are 'public', you probably only need validate_gauge_data().

"""
from typing import Dict, List, Optional, Tuple

import numpy as np

from .errors import ValidationError
from .rules import (
    all_closed_under_negation,
    all_finite,
    all_greater_or_equal,
    all_greater_than,
    all_same_length,
    is_callable,
    is_full_rank,
    is_positive_definite,
    is_square,
    is_symmetric,
    matches_dimension,
    none_nan,
    not_empty,
)
from .utils import GaugeData
from ..enum import GaugeFamily

# required and optional fields per family, with the expected number of array dimensions (None for scalars/callables)
FieldSpec = Dict[str, Optional[int]]
GAUGE_FIELDS: Dict[GaugeFamily, Tuple[FieldSpec, FieldSpec]] = {
    GaugeFamily.lp: ({"dim": 0, "p": 0}, {"weight": 0}),
    GaugeFamily.ellipsoid: ({"gram": 2}, {"dim": 0}),
    GaugeFamily.polytope_v: ({"vertices": 2}, {"dim": 0}),
    GaugeFamily.polytope_h: ({"normals": 2, "offsets": 1}, {"dim": 0}),
    GaugeFamily.oracle: ({"dim": 0, "callback": None}, {}),
}


def validate_gauge_data(family: GaugeFamily, data: GaugeData) -> Optional[List[ValidationError]]:
    """
    Validates the raw data of a single gauge:

        1. Is the data structure correct? (checking field names, types and array shapes)
        2. Are the supplied values valid? (checking limits, symmetry, definiteness and rank)

    Args:
        family: The gauge family the data belongs to
        data: The raw gauge data

    Raises:
        KeyError, TypeError if the data structure is invalid.

    Returns:
        None if the data is valid, or a list containing all validation errors.
    """
    assert_valid_data_structure(data, family)
    errors = validate_values(family, data)
    return errors if errors else None


def assert_valid_data_structure(data: GaugeData, family: GaugeFamily) -> None:
    """
    Checks if all field names are valid for the family, if all required fields are present and if numerical fields
    have the expected number of array dimensions.

    Args:
        data: the raw gauge data
        family: the gauge family

    Raises: KeyError, TypeError

    """
    if family not in GAUGE_FIELDS:
        raise KeyError(f"Gauge data can not be validated for family '{family.value}'.")
    required, optional = GAUGE_FIELDS[family]
    for field in data:
        if field not in required and field not in optional:
            raise KeyError(f"Unknown field '{field}' in {family.value} gauge data.")
    for field in required:
        if field not in data:
            raise KeyError(f"Missing field '{field}' in {family.value} gauge data.")

    expected_ndim = {**required, **optional}
    for field, value in data.items():
        ndim = expected_ndim[field]
        if ndim is None:
            continue
        array = np.asarray(value)
        if not np.issubdtype(array.dtype, np.number) or np.issubdtype(array.dtype, np.complexfloating):
            raise TypeError(f"Unexpected data type {array.dtype} for '{field}' in {family.value} gauge data.")
        if array.ndim != ndim:
            raise TypeError(
                f"Unexpected number of dimensions {array.ndim} for '{field}' in {family.value} gauge data "
                f"(should be {ndim})."
            )


def validate_values(family: GaugeFamily, data: GaugeData) -> List[ValidationError]:
    """
    Call the appropriate validation function for the gauge family

    Args:
        family: the gauge family
        data: the raw gauge data

    Returns: an empty list if all data is valid, or a list of ValidationErrors.

    """
    validators = {
        GaugeFamily.lp: validate_lp,
        GaugeFamily.ellipsoid: validate_ellipsoid,
        GaugeFamily.polytope_v: validate_polytope_v,
        GaugeFamily.polytope_h: validate_polytope_h,
        GaugeFamily.oracle: validate_oracle,
    }
    return validators[family](data)


# pylint: disable=missing-function-docstring


def validate_dimension(data: GaugeData, component: str) -> List[ValidationError]:
    if "dim" not in data:
        return []
    return all_greater_or_equal(data, component, "dim", 1)


def validate_lp(data: GaugeData) -> List[ValidationError]:
    errors = validate_dimension(data, "lp")
    # p = inf is admitted, the closure of the family under duality needs it
    errors += none_nan(data, "lp", "p")
    errors += all_greater_or_equal(data, "lp", "p", 1)
    if "weight" in data:
        errors += all_finite(data, "lp", "weight")
        errors += all_greater_than(data, "lp", "weight", 0)
    return errors


def validate_ellipsoid(data: GaugeData) -> List[ValidationError]:
    errors = validate_dimension(data, "ellipsoid")
    errors += is_square(data, "ellipsoid", "gram")
    if errors:
        return errors
    if "dim" in data:
        errors += matches_dimension(data, "ellipsoid", "gram", int(data["dim"]))
    errors += all_finite(data, "ellipsoid", "gram")
    if errors:
        return errors
    errors += is_symmetric(data, "ellipsoid", "gram")
    if not errors:
        errors += is_positive_definite(data, "ellipsoid", "gram")
    return errors


def validate_polytope_v(data: GaugeData) -> List[ValidationError]:
    errors = validate_dimension(data, "polytope_v")
    errors += not_empty(data, "polytope_v", "vertices")
    if errors:
        return errors
    if "dim" in data:
        errors += matches_dimension(data, "polytope_v", "vertices", int(data["dim"]))
    errors += all_finite(data, "polytope_v", "vertices")
    if errors:
        return errors
    dimension = np.asarray(data["vertices"]).shape[1]
    errors += is_full_rank(data, "polytope_v", "vertices", dimension)
    errors += all_closed_under_negation(data, "polytope_v", "vertices")
    return errors


def validate_polytope_h(data: GaugeData) -> List[ValidationError]:
    errors = validate_dimension(data, "polytope_h")
    errors += not_empty(data, "polytope_h", "normals")
    errors += all_same_length(data, "polytope_h", ["normals", "offsets"])
    if errors:
        return errors
    if "dim" in data:
        errors += matches_dimension(data, "polytope_h", "normals", int(data["dim"]))
    errors += all_finite(data, "polytope_h", "normals")
    errors += all_finite(data, "polytope_h", "offsets")
    errors += all_greater_than(data, "polytope_h", "offsets", 0)
    if errors:
        return errors
    normals = np.asarray(data["normals"], dtype=np.float64)
    dimension = normals.shape[1]
    errors += is_full_rank(data, "polytope_h", "normals", dimension)
    # (a, b) and (-a, b) must both be present; comparing a / b also matches rescaled copies of a halfspace
    scaled = normals / np.asarray(data["offsets"], dtype=np.float64)[:, np.newaxis]
    errors += all_closed_under_negation({"normals": scaled}, "polytope_h", "normals")
    return errors


def validate_oracle(data: GaugeData) -> List[ValidationError]:
    errors = validate_dimension(data, "oracle")
    errors += is_callable(data, "oracle", "callback")
    return errors
