# SPDX-FileCopyrightText: 2022 Contributors to the Systocap project
#
# SPDX-License-Identifier: MPL-2.0

"""Gauge data validation"""

from .assertions import assert_valid_gauge_data, ValidationException
from .errors import ValidationError
from .utils import errors_to_string, GaugeData
from .validation import validate_gauge_data
