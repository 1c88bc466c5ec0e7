# SPDX-FileCopyrightText: 2022 Contributors to the Systocap project
#
# SPDX-License-Identifier: MPL-2.0

import pytest

from systocap.errors import (
    ConfigError,
    DimensionError,
    EmbeddingDomainError,
    EnumerationLimitError,
    PreconditionError,
    SamplingError,
    SystocapError,
    WidthViolationError,
)
from systocap.lattice import systole, unimodular_complete
from systocap.norm import LpGauge, gauge


@pytest.mark.parametrize(
    ("error_type", "builtin"),
    [
        pytest.param(DimensionError, ValueError, id="dimension"),
        pytest.param(PreconditionError, ValueError, id="precondition"),
        pytest.param(EmbeddingDomainError, ValueError, id="embedding-domain"),
        pytest.param(ConfigError, ValueError, id="config"),
        pytest.param(SamplingError, RuntimeError, id="sampling"),
        pytest.param(EnumerationLimitError, RuntimeError, id="enumeration-limit"),
    ],
)
def test_error_hierarchy(error_type, builtin):
    assert issubclass(error_type, SystocapError)
    assert issubclass(error_type, builtin)


def test_width_violation_is_not_a_value_error():
    # a width violation invalidates a certificate instead of rejecting the input
    error = WidthViolationError(1, -1.0, 1.0)
    assert isinstance(error, SystocapError)
    assert not isinstance(error, ValueError)
    assert str(error) == "Covector coordinate 1 equals -1.0, outside of the width interval (-1.0, 1.0)."
    assert (error.coordinate, error.value, error.width) == (1, -1.0, 1.0)


def test_enumeration_limit_error():
    error = EnumerationLimitError(121, 10)
    assert (error.box_size, error.cap) == (121, 10)
    assert "SYSTOCAP_ENUM_CAP" in str(error)


def test_config_error_location():
    assert str(ConfigError("Missing field")) == "Missing field"
    assert str(ConfigError("Missing field", field="norm.p")) == "Missing field (field 'norm.p')"
    error = ConfigError("Invalid JSON: Expecting value", line=2, column=5)
    assert str(error) == "Invalid JSON: Expecting value (line 2, column 5)"
    assert error.field is None


def test_errors_are_raised_as_systocap_errors():
    with pytest.raises(SystocapError):
        gauge(LpGauge(2, 1), [1.0, 2.0, 3.0])
    with pytest.raises(SystocapError):
        unimodular_complete((2, 4))


def test_enumeration_limit_from_environment(monkeypatch):
    monkeypatch.setenv("SYSTOCAP_ENUM_CAP", "1")
    with pytest.raises(EnumerationLimitError):
        systole(LpGauge(2, 1))
