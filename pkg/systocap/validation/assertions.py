# SPDX-FileCopyrightText: 2022 Contributors to the Systocap project
#
# SPDX-License-Identifier: MPL-2.0

"""
Helper functions to assert valid data. They basically call validate_gauge_data and raise a ValidationException if
the validation results in one or more errors.
"""
from typing import List

from .errors import ValidationError
from .utils import GaugeData, errors_to_string
from .validation import validate_gauge_data
from ..enum import GaugeFamily


class ValidationException(ValueError):
    """
    An exception storing the name of the validated data, a list of errors and a convenient conversion to string
    to display a summary of all the errors when printing the exception.
    """

    def __init__(self, errors: List[ValidationError], name: str = "data"):
        super().__init__(f"Invalid {name}")
        self.errors = errors
        self.name = name

    def __str__(self):
        return errors_to_string(errors=self.errors, name=self.name)


def assert_valid_gauge_data(family: GaugeFamily, data: GaugeData):
    """
    Validates the raw data of a gauge:

        1. Is the data structure correct? (checking field names, types and array shapes)
        2. Are the supplied values valid? (finite, positive, symmetric, positive definite, full rank, ...)

    Args:
        family: The gauge family the data belongs to
        data: The raw gauge data

    Raises:
        KeyError or TypeError if the data structure is invalid.
        ValidationException if the contents are invalid.
    """
    validation_errors = validate_gauge_data(family=family, data=data)
    if validation_errors:
        raise ValidationException(validation_errors, f"{family.value} gauge data")
