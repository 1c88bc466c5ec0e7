# SPDX-FileCopyrightText: 2022 Contributors to the Systocap project
#
# SPDX-License-Identifier: MPL-2.0

"""
Common Enumerations

Note: the string values appear in configuration files and machine reports, so don't change them without migrating
the stored configurations as well.

"""

from enum import Enum


# pylint: disable=invalid-name


class GaugeFamily(Enum):
    """Representations of a flat reversible norm"""

    lp = "lp"
    ellipsoid = "ellipsoid"
    polytope_v = "polytope_v"
    polytope_h = "polytope_h"
    oracle = "oracle"
    pullback = "pullback"


class CapacityCase(Enum):
    """The hypothesis that justifies the lower bound of a capacity certificate"""

    riemannian = "Riemannian"
    minorant_provided = "MinorantProvided"
    lp_with_small_exponent = "LpWithSmallExponent"
    hz_only = "HZOnly"
    upper_bound_only = "UpperBoundOnly"


class Command(Enum):
    """CLI commands"""

    systole = "systole"
    capacity = "capacity"
    certify_upper = "certify-upper"
    certify_lower = "certify-lower"
    verify_embedding = "verify-embedding"
    axioms = "axioms"


class ReportFormat(Enum):
    """Report output formats"""

    human = "human"
    machine = "machine"
