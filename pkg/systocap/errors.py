# SPDX-FileCopyrightText: 2022 Contributors to the Systocap project
#
# SPDX-License-Identifier: MPL-2.0

"""
Exceptions raised by the computations. Invalid gauge data is reported through systocap.validation instead.
"""
from typing import Optional


# No need to explain each class, as the class name should be self explanatory


class SystocapError(Exception):
    """
    Base class of all runtime errors raised by systocap
    """


class DimensionError(SystocapError, ValueError):
    """
    A vector or matrix does not match the dimension of the gauge it is used with
    """


class PreconditionError(SystocapError, ValueError):
    """
    An operation was called with arguments outside its domain, e.g. a non-primitive lattice vector
    """


class EnumerationLimitError(SystocapError, RuntimeError):
    """
    The lattice box that has to be enumerated contains more points than the configured cap
    """

    def __init__(self, box_size: int, cap: int):
        super().__init__(
            f"Enumeration box contains {box_size} points, which exceeds the cap of {cap} points "
            "(raise it through SYSTOCAP_ENUM_CAP)."
        )
        self.box_size = box_size
        self.cap = cap


class EmbeddingDomainError(SystocapError, ValueError):
    """
    A map was evaluated outside of its (open) domain
    """


class WidthViolationError(SystocapError):
    """
    A covector of the disc bundle violates |p_k| < s_k, which invalidates the upper bound certificate
    """

    def __init__(self, coordinate: int, value: float, width: float):
        super().__init__(
            f"Covector coordinate {coordinate} equals {value!r}, outside of the width interval "
            f"(-{width!r}, {width!r})."
        )
        self.coordinate = coordinate
        self.value = value
        self.width = width


class SamplingError(SystocapError, RuntimeError):
    """
    Rejection sampling did not accept a single point within the attempt limit
    """


class ConfigError(SystocapError, ValueError):
    """
    The run configuration does not follow the schema. The field is a dotted path (e.g. 'norm.gram[1][0]'); line and
    column are only known for syntax errors.
    """

    def __init__(
        self, message: str, field: Optional[str] = None, line: Optional[int] = None, column: Optional[int] = None
    ):
        location = ""
        if field is not None:
            location += f" (field '{field}')"
        if line is not None:
            location += f" (line {line}, column {column})"
        super().__init__(message + location)
        self.field = field
        self.line = line
        self.column = column
