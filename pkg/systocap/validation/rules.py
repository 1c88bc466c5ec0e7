# SPDX-FileCopyrightText: 2022 Contributors to the Systocap project
#
# SPDX-License-Identifier: MPL-2.0

"""
This module contains a set of rules for gauge data. They all share the same (or similar) logic and interface.

In general each function checks the values of a single field of the gauge data and it returns a list of error
objects containing the component (gauge family), the field and the row indices that did not match the rule.
E.g. all_greater_than(data, 'polytope_h', 'offsets', 0.0) returns a NotGreaterThanError listing every halfspace with
an offset of 0 or less.

The comparison rules ignore NaN values, all_finite() is the rule that explicitly reports them. Keep in mind that
np.less_equal(x) yields different results than np.logical_not(np.greater(x)) as a NaN comparison always results in
False.

Input data:

    data: Dict[str, Any]
        The raw data of a single gauge, as produced by the GaugeSpec constructors or the configuration parser

    component: str
        The name of the gauge family, only used in the error objects

    field: str
        The name of the field, which should be an existing key in the data

Output data:
    errors: List[ValidationError]
        A list containing errors; in case of success, `errors` is the empty list: [].

"""
from typing import List, Type, TypeVar, Union
from typing import Protocol

import numpy as np

from .errors import (
    ComparisonError,
    DimensionMismatchError,
    EmptyFieldError,
    LengthMismatchError,
    NotCallableError,
    NotCentrallySymmetricError,
    NotFiniteError,
    NotGreaterOrEqualError,
    NotGreaterThanError,
    NotPositiveDefiniteError,
    NotSymmetricError,
    RankDeficientError,
    ValidationError,
)
from .utils import GaugeData

Error = TypeVar("Error", bound=ValidationError)

# eigenvalues at or below this value are treated as degenerate
MIN_EIGENVALUE = 1e-12
# tolerance when matching rows with their negation
SYMMETRY_TOLERANCE = 1e-12


class ComparisonFn(Protocol):  # pylint: disable=too-few-public-methods
    """
    A protocol defining a function on one or more numpy arrays, resulting in a single numpy array.
    """

    def __call__(self, val: np.ndarray, *ref: np.ndarray) -> np.ndarray:
        ...


def all_greater_than(
    data: GaugeData, component: str, field: str, ref_value: Union[int, float]
) -> List[NotGreaterThanError]:
    """
    Check that all values in the field are greater than the reference value. Returns an empty list on success, or a
    list containing a single error object on failure.

    Args:
        data: The raw gauge data
        component: The gauge family
        field: The field of interest
        ref_value: The reference value against which all values are compared

    Returns:
        A list containing zero or one NotGreaterThanErrors, listing all rows where the value was less than, or equal
        to, the ref_value.
    """

    def not_greater(val: np.ndarray, ref: np.ndarray):
        return np.less_equal(val, ref)

    return none_match_comparison(data, component, field, not_greater, ref_value, NotGreaterThanError)


def all_greater_or_equal(
    data: GaugeData, component: str, field: str, ref_value: Union[int, float]
) -> List[NotGreaterOrEqualError]:
    """
    Check that all values in the field are greater than, or equal to the reference value. Returns an empty list on
    success, or a list containing a single error object on failure.

    Args:
        data: The raw gauge data
        component: The gauge family
        field: The field of interest
        ref_value: The reference value against which all values are compared

    Returns:
        A list containing zero or one NotGreaterOrEqualErrors, listing all rows where the value was less than the
        ref_value.
    """

    def not_greater_or_equal(val: np.ndarray, ref: np.ndarray):
        return np.less(val, ref)

    return none_match_comparison(data, component, field, not_greater_or_equal, ref_value, NotGreaterOrEqualError)


def none_match_comparison(
    data: GaugeData,
    component: str,
    field: str,
    compare_fn: ComparisonFn,
    ref_value: ComparisonError.RefType,
    error: Type[Error] = ComparisonError,  # type: ignore
) -> List[Error]:
    # pylint: disable=too-many-arguments
    """
    For all values in the field, check that the comparison function returns False for every value. A scalar field
    yields an error without row ids, a vector field lists the offending rows.

    Args:
        data: The raw gauge data
        component: The gauge family
        field: The field of interest
        compare_fn: A function that takes the data in the field and the reference value and returns True for
            offending values
        ref_value: A reference value
        error: The type (class) of error that should be returned in case any of the values match the comparison

    Returns:
        A list containing zero or one comparison errors (should be a subclass of ComparisonError)
    """
    values = np.asarray(data[field], dtype=np.float64)
    invalid = compare_fn(values, np.array(ref_value))
    if not np.any(invalid):
        return []
    ids = np.flatnonzero(invalid).tolist() if values.ndim > 0 else []
    return [error(component, field, ids, ref_value)]


def all_finite(data: GaugeData, component: str, field: str) -> List[NotFiniteError]:
    """
    Check that a numerical field contains no NaN or infinite values. For matrices the offending rows are listed.
    """
    values = np.asarray(data[field], dtype=np.float64)
    finite = np.isfinite(values)
    if np.all(finite):
        return []
    if values.ndim == 0:
        return [NotFiniteError(component, field)]
    rows = np.flatnonzero(~finite.reshape(values.shape[0], -1).all(axis=1))
    return [NotFiniteError(component, field, rows.tolist())]


def none_nan(data: GaugeData, component: str, field: str) -> List[NotFiniteError]:
    """
    Check that a numerical field contains no NaN values. Infinite values are admitted, e.g. the exponent p = inf.
    """
    values = np.asarray(data[field], dtype=np.float64)
    missing = np.isnan(values)
    if not np.any(missing):
        return []
    if values.ndim == 0:
        return [NotFiniteError(component, field)]
    rows = np.flatnonzero(missing.reshape(values.shape[0], -1).any(axis=1))
    return [NotFiniteError(component, field, rows.tolist())]


def not_empty(data: GaugeData, component: str, field: str) -> List[EmptyFieldError]:
    """
    Check that a list valued field has at least one row.
    """
    if np.asarray(data[field]).shape[0] == 0:
        return [EmptyFieldError(component, field)]
    return []


def all_same_length(data: GaugeData, component: str, fields: List[str]) -> List[LengthMismatchError]:
    """
    Check that all fields have the same number of rows.
    """
    lengths = {np.asarray(data[field]).shape[0] for field in fields}
    if len(lengths) > 1:
        return [LengthMismatchError(component, fields)]
    return []


def matches_dimension(data: GaugeData, component: str, field: str, dimension: int) -> List[DimensionMismatchError]:
    """
    Check that the last axis of a field has the given length (and, for a matrix field that should be square, that
    both axes have).
    """
    shape = np.asarray(data[field]).shape
    if shape[-1] != dimension:
        return [DimensionMismatchError(component, field, dimension)]
    return []


def is_square(data: GaugeData, component: str, field: str) -> List[DimensionMismatchError]:
    """
    Check that a matrix field is square.
    """
    rows, cols = np.asarray(data[field]).shape
    if rows != cols:
        return [DimensionMismatchError(component, field, rows)]
    return []


def is_symmetric(data: GaugeData, component: str, field: str) -> List[NotSymmetricError]:
    """
    Check that a square matrix field equals its transpose (up to a relative tolerance).
    """
    matrix = np.asarray(data[field], dtype=np.float64)
    scale = max(1.0, float(np.max(np.abs(matrix))))
    if np.max(np.abs(matrix - matrix.T)) > SYMMETRY_TOLERANCE * scale:
        return [NotSymmetricError(component, field)]
    return []


def is_positive_definite(data: GaugeData, component: str, field: str) -> List[NotPositiveDefiniteError]:
    """
    Check that a symmetric matrix field has all eigenvalues above MIN_EIGENVALUE.
    """
    smallest = float(np.linalg.eigvalsh(np.asarray(data[field], dtype=np.float64))[0])
    if smallest <= MIN_EIGENVALUE:
        return [NotPositiveDefiniteError(component, field, smallest)]
    return []


def is_full_rank(data: GaugeData, component: str, field: str, dimension: int) -> List[RankDeficientError]:
    """
    Check that the rows of a field span R^dimension.
    """
    rows = np.asarray(data[field], dtype=np.float64)
    rank = int(np.linalg.matrix_rank(rows)) if rows.size > 0 else 0
    if rank < dimension:
        return [RankDeficientError(component, field, rank, dimension)]
    return []


def all_closed_under_negation(data: GaugeData, component: str, field: str) -> List[NotCentrallySymmetricError]:
    """
    Check that for every row r of the field there is a row equal to -r (up to SYMMETRY_TOLERANCE, relative to the
    largest entry).
    """
    rows = np.asarray(data[field], dtype=np.float64)
    scale = max(1.0, float(np.max(np.abs(rows))))
    distance = np.max(np.abs(rows[:, np.newaxis, :] + rows[np.newaxis, :, :]), axis=2)
    unmatched = np.flatnonzero(np.min(distance, axis=1) > SYMMETRY_TOLERANCE * scale)
    if unmatched.size > 0:
        return [NotCentrallySymmetricError(component, field, unmatched.tolist())]
    return []


def is_callable(data: GaugeData, component: str, field: str) -> List[NotCallableError]:
    """
    Check that the field holds a callable.
    """
    if not callable(data[field]):
        return [NotCallableError(component, field)]
    return []
