# SPDX-FileCopyrightText: 2022 Contributors to the Systocap project
#
# SPDX-License-Identifier: MPL-2.0

import numpy as np
import pytest

from systocap.validation.errors import (
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
)
from systocap.validation.rules import (
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
    none_match_comparison,
    none_nan,
    not_empty,
)


def test_all_greater_than():
    valid = {"offsets": np.array([0.1, 0.2, 0.5, np.nan])}
    errors = all_greater_than(valid, "polytope_h", "offsets", 0)
    assert not errors

    invalid = {"offsets": np.array([1.0, 0.0, -0.3, np.inf, -np.inf])}
    errors = all_greater_than(invalid, "polytope_h", "offsets", 0)
    assert len(errors) == 1
    assert NotGreaterThanError("polytope_h", "offsets", [1, 2, 4], 0) in errors


def test_all_greater_or_equal():
    valid = {"p": 1.0}
    errors = all_greater_or_equal(valid, "lp", "p", 1)
    assert not errors

    errors = all_greater_or_equal({"p": np.inf}, "lp", "p", 1)
    assert not errors

    invalid = {"p": 0.5}
    errors = all_greater_or_equal(invalid, "lp", "p", 1)
    assert len(errors) == 1
    assert NotGreaterOrEqualError("lp", "p", [], 1) in errors


def test_none_match_comparison():
    data = {"weight": np.array([0.1, 0.2, 0.3, 0.4, np.nan])}
    errors = none_match_comparison(data, "lp", "weight", np.greater, 0.25, ComparisonError)
    assert len(errors) == 1
    assert ComparisonError("lp", "weight", [2, 3], 0.25) in errors


def test_all_finite():
    valid = {"gram": np.array([[1.0, 0.5], [0.5, 1.0]])}
    errors = all_finite(valid, "ellipsoid", "gram")
    assert not errors

    invalid = {"gram": np.array([[1.0, 0.5], [np.nan, 1.0], [np.inf, 0.0]])}
    errors = all_finite(invalid, "ellipsoid", "gram")
    assert len(errors) == 1
    assert NotFiniteError("ellipsoid", "gram", [1, 2]) in errors

    errors = all_finite({"weight": np.inf}, "lp", "weight")
    assert errors == [NotFiniteError("lp", "weight")]


def test_none_nan():
    assert not none_nan({"p": np.inf}, "lp", "p")
    assert none_nan({"p": np.nan}, "lp", "p") == [NotFiniteError("lp", "p")]

    errors = none_nan({"offsets": np.array([1.0, np.nan, np.inf, np.nan])}, "polytope_h", "offsets")
    assert errors == [NotFiniteError("polytope_h", "offsets", [1, 3])]


def test_not_empty():
    assert not not_empty({"vertices": np.array([[1.0, 0.0]])}, "polytope_v", "vertices")
    errors = not_empty({"vertices": np.zeros((0, 2))}, "polytope_v", "vertices")
    assert errors == [EmptyFieldError("polytope_v", "vertices")]


def test_all_same_length():
    data = {"normals": np.eye(2), "offsets": np.ones(2)}
    assert not all_same_length(data, "polytope_h", ["normals", "offsets"])

    data = {"normals": np.eye(2), "offsets": np.ones(3)}
    errors = all_same_length(data, "polytope_h", ["normals", "offsets"])
    assert errors == [LengthMismatchError("polytope_h", ["normals", "offsets"])]


def test_matches_dimension():
    data = {"gram": np.eye(3)}
    assert not matches_dimension(data, "ellipsoid", "gram", 3)
    errors = matches_dimension(data, "ellipsoid", "gram", 2)
    assert errors == [DimensionMismatchError("ellipsoid", "gram", 2)]


def test_is_square():
    assert not is_square({"gram": np.eye(2)}, "ellipsoid", "gram")
    errors = is_square({"gram": np.ones((2, 3))}, "ellipsoid", "gram")
    assert errors == [DimensionMismatchError("ellipsoid", "gram", 2)]


def test_is_symmetric():
    assert not is_symmetric({"gram": np.array([[2.0, 1.0], [1.0, 2.0]])}, "ellipsoid", "gram")
    # relative to the largest entry
    assert not is_symmetric({"gram": np.array([[1e6, 1.0], [1.0 + 1e-9, 1e6]])}, "ellipsoid", "gram")
    errors = is_symmetric({"gram": np.array([[1.0, 2.0], [0.0, 1.0]])}, "ellipsoid", "gram")
    assert errors == [NotSymmetricError("ellipsoid", "gram")]


def test_is_positive_definite():
    assert not is_positive_definite({"gram": np.array([[5.0, 3.0], [3.0, 2.0]])}, "ellipsoid", "gram")

    errors = is_positive_definite({"gram": np.array([[1.0, 2.0], [2.0, 1.0]])}, "ellipsoid", "gram")
    assert len(errors) == 1
    assert errors[0] == NotPositiveDefiniteError("ellipsoid", "gram", -1.0)
    assert errors[0].eigenvalue == pytest.approx(-1.0)

    errors = is_positive_definite({"gram": np.array([[1.0, 1.0], [1.0, 1.0]])}, "ellipsoid", "gram")
    assert len(errors) == 1


def test_is_full_rank():
    assert not is_full_rank({"vertices": np.array([[1.0, 0.0], [0.0, 1.0]])}, "polytope_v", "vertices", 2)
    errors = is_full_rank({"vertices": np.array([[1.0, 1.0], [-1.0, -1.0]])}, "polytope_v", "vertices", 2)
    assert errors == [RankDeficientError("polytope_v", "vertices", 1, 2)]


def test_all_closed_under_negation():
    square = np.array([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]])
    assert not all_closed_under_negation({"vertices": square}, "polytope_v", "vertices")

    triangle = np.array([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0]])
    errors = all_closed_under_negation({"vertices": triangle}, "polytope_v", "vertices")
    assert errors == [NotCentrallySymmetricError("polytope_v", "vertices", [2])]


def test_is_callable():
    assert not is_callable({"callback": abs}, "oracle", "callback")
    errors = is_callable({"callback": "abs"}, "oracle", "callback")
    assert errors == [NotCallableError("oracle", "callback")]
