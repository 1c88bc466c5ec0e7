# SPDX-FileCopyrightText: 2022 Contributors to the Systocap project
#
# SPDX-License-Identifier: MPL-2.0

"""
The Systocap module: symplectic capacities of disc cotangent bundles of flat reversible Finsler tori

Provides
  1. Gauges of flat reversible norms and their duals
  2. Systoles of the standard lattice and unimodular completion
  3. The explicit embedding into a symplectic cylinder and its verification
  4. Capacity certificates: c = 2 sys(F)
  5. Enumeration types

Example usage
-------------

Required imports for basic usage
>>> from systocap import EllipsoidGauge, capacity

Setting up a flat Riemannian norm
>>> spec = EllipsoidGauge([[5, 3], [3, 2]])

Computing the certificate
>>> certificate = capacity(spec, samples=1000, seed=1)
>>> certificate.systole.u
(1, -1)
>>> round(certificate.value, 12)
2.0
"""

# Norms
from .norm import (
    EllipsoidGauge,
    GaugeSpec,
    LpGauge,
    OracleGauge,
    PolytopeHGauge,
    PolytopeVGauge,
    PullbackGauge,
    check_gauge_axioms,
    dual_gauge,
    dual_spec,
    dual_value,
    gauge,
    sandwich_radii,
)

# Lattice
from .lattice import (
    SystoleResult,
    UnimodularMatrix,
    enumerate_short_vectors,
    pullback_gauge,
    random_unimodular,
    reduce_norm,
    systole,
    unimodular_complete,
)

# Embedding
from .embedding import (
    CylinderPoint,
    EmbeddingReport,
    PhasePoint,
    annulus_to_disc,
    annulus_to_disc_inverse,
    cotangent_lift,
    full_embedding,
    verify_embedding_samples,
    verify_symplectic,
)

# Capacities
from .capacity import CapacityCertificate, capacity, classify_case, lower_certificate, scale_gauge

# Enumerations
from .enum import CapacityCase, Command, GaugeFamily, ReportFormat
