# SPDX-FileCopyrightText: 2022 Contributors to the Systocap project
#
# SPDX-License-Identifier: MPL-2.0

from unittest.mock import MagicMock, patch

import numpy as np
import pytest

from systocap.enum import GaugeFamily
from systocap.validation.assertions import ValidationException, assert_valid_gauge_data
from systocap.validation.errors import ValidationError


@patch("systocap.validation.assertions.errors_to_string")
def test_validation_exception(errors_to_string_mock: MagicMock):
    error = ValidationError()
    exception = ValidationException([error, error], name="dummy data")
    assert exception.errors == [error, error]
    assert exception.name == "dummy data"
    assert isinstance(exception, ValueError)

    errors_to_string_mock.return_value = "Dummy Exception"
    assert str(exception) == "Dummy Exception"
    errors_to_string_mock.assert_called_once_with(errors=[error, error], name="dummy data")


@patch("systocap.validation.assertions.validate_gauge_data")
def test_assert_valid_gauge_data(validate_mock: MagicMock):
    validate_mock.return_value = None
    assert_valid_gauge_data(family=GaugeFamily.ellipsoid, data={"gram": np.eye(2)})
    validate_mock.assert_called_once()
    assert validate_mock.call_args.kwargs["family"] == GaugeFamily.ellipsoid

    validate_mock.return_value = [ValidationError()]
    with pytest.raises(ValidationException) as exc_info:
        assert_valid_gauge_data(GaugeFamily.lp, {})
    assert exc_info.value.name == "lp gauge data"
