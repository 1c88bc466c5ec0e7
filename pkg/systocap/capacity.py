# SPDX-FileCopyrightText: 2022 Contributors to the Systocap project
#
# SPDX-License-Identifier: MPL-2.0

"""
Capacity certificates for disc cotangent bundles of flat reversible Finsler tori

The common value of the normalized capacities is c = 2 sys(f). The upper bound is certified through the explicit
embedding into the cylinder Z_r1 (systocap.embedding); the lower bound through the lattice check that s K contains
no nonzero integer vector, combined with either a Riemannian minorant with the same systole or the assumption
c >= c_HZ, where c_HZ(K x K*) = 4 is a cited constant.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Union

import numpy as np
from scipy.linalg import cholesky, solve_triangular

from .config import DEFAULT_TOLERANCES
from .embedding import (
    EmbeddingReport,
    coordinate_widths,
    sample_disc_bundle,
    verify_embedding_samples,
)
from .enum import CapacityCase
from .errors import PreconditionError
from .lattice import SystoleResult, UnimodularMatrix, enumerate_short_vectors, systole, unimodular_complete
from .norm import EllipsoidGauge, GaugeSpec, LpGauge, PullbackGauge, gauge_many

logger = logging.getLogger(__name__)

HZ_CAPACITY_CITATION = "c_HZ(K x K*) = 4 by [Theorem 1.7]{AKO}"
LOWER_BOUND_SAMPLES = 1000
MINORANT_SAMPLES = 1000

Matrix = Union[Sequence[Sequence[float]], np.ndarray]


class LowerBoundStatus:
    """Status strings of a lower bound certificate"""

    # pylint: disable=too-few-public-methods

    certified = "certified"
    probable = "probable"
    failed = "failed"


@dataclass
class MinorantReport:
    """
    Comparison of a gauge f with the Riemannian gauge g(v) = sqrt(v^T G v): g <= f on sampled directions and
    sys(g) = sys(f).
    """

    passed: bool
    samples: int
    seed: int
    worst_excess: float
    worst_direction: List[float]
    spec_systole: float
    minorant_systole: float


@dataclass
class CaseClassification:
    """
    The hypothesis that certifies equality, with the Riemannian minorant (if any) and notes for the report
    """

    case: CapacityCase
    minorant: Optional[np.ndarray] = None
    normalizing_map: Optional[np.ndarray] = None
    notes: List[str] = field(default_factory=list)


@dataclass
class InjectivityReport:
    """
    Spot check that u + v leaves (s/2) K for sampled u in (s/2) K and every short nonzero lattice vector v
    """

    samples: int
    lattice_vectors: int
    failures: int

    @property
    def passed(self) -> bool:
        """
        True if no translate of a sample stayed inside (s/2) K
        """
        return self.failures == 0


@dataclass
class LowerBoundEvidence:
    """
    Evidence for c >= 2s: the open body s K holds no nonzero lattice vector, the inclusion (s/2) K x K* into the disc
    bundle and the cited value of c_HZ(K x K*).
    """

    status: str
    lattice_check: bool
    exhaustive: bool
    short_vectors: List[List[int]]
    inclusion_samples: int
    inclusion_failures: int
    injectivity: InjectivityReport
    citation: str = HZ_CAPACITY_CITATION


@dataclass
class CapacityCertificate:
    # pylint: disable=too-many-instance-attributes
    """
    The capacity value 2s with the evidence for both bounds
    """

    value: float
    systole: SystoleResult
    basis: UnimodularMatrix
    widths: List[float]
    r1: float
    upper_report: EmbeddingReport
    lower_lattice_check: bool
    case: CapacityCase
    lower_evidence: LowerBoundEvidence
    minorant: Optional[np.ndarray] = None
    normalizing_map: Optional[np.ndarray] = None
    notes: List[str] = field(default_factory=list)

    @property
    def equality_certified(self) -> bool:
        """
        True if both bounds hold and the case provides the hypothesis for equality
        """
        return self.passed and self.case != CapacityCase.upper_bound_only

    @property
    def passed(self) -> bool:
        """
        True if the upper bound report passed and the lower bound evidence did not fail
        """
        return self.upper_report.passed and self.lower_evidence.status != LowerBoundStatus.failed


def scale_gauge(spec: GaugeSpec, t: float) -> GaugeSpec:
    """
    The gauge t f for t > 0. Systole and capacity scale by t.
    """
    if not t > 0 or not math.isfinite(t):
        raise PreconditionError(f"Scaling factor should be positive and finite, got {t!r}.")
    if t == 1:
        return spec
    return spec.scaled(t)


def ellipsoid_normalizing_map(gram: Matrix) -> np.ndarray:
    """
    The map M = L^-T, with Q = L L^T the Cholesky decomposition, for which K = M(B). Then M x M^-T carries the
    Lagrangian product of the round balls onto K x K*.
    """
    lower = cholesky(np.asarray(gram, dtype=np.float64), lower=True)
    return solve_triangular(lower, np.eye(lower.shape[0]), lower=True).T


def verify_riemannian_minorant(
    spec: GaugeSpec,
    gram: Matrix,
    samples: int = MINORANT_SAMPLES,
    seed: int = 0,
    tolerance: float = DEFAULT_TOLERANCES["minorant"],
    spec_systole: Optional[float] = None,
) -> MinorantReport:
    """
    Check that the Riemannian gauge g of a Gram matrix is a minorant of f with the same systole.

    Args:
        spec: The gauge f
        gram: A symmetric positive definite Gram matrix G
        samples: The number of random unit directions on which g <= f (1 + tolerance) is tested
        seed: Seed of the random directions
        tolerance: Relative tolerance of the comparison
        spec_systole: sys(f), if it is already known

    Raises:
        ValidationException if the Gram matrix is not symmetric positive definite.

    Returns:
        A MinorantReport.
    """
    minorant = EllipsoidGauge(gram)
    if minorant.dimension != spec.dimension:
        raise PreconditionError(f"Gram matrix of size {minorant.dimension} for a gauge of dimension {spec.dimension}.")
    rng = np.random.default_rng(seed)
    directions = rng.standard_normal((samples, spec.dimension))
    directions /= np.linalg.norm(directions, axis=1)[:, np.newaxis]
    excess = gauge_many(minorant, directions) / gauge_many(spec, directions) - 1.0
    worst = int(np.argmax(excess))

    spec_value = systole(spec).s if spec_systole is None else spec_systole
    minorant_value = systole(minorant).s
    same_systole = abs(minorant_value - spec_value) <= DEFAULT_TOLERANCES["open_body"] * spec_value
    passed = bool(excess[worst] <= tolerance) and same_systole
    if not passed:
        logger.warning(
            "Gram matrix is not a Riemannian minorant: excess %r, systoles %r and %r",
            float(excess[worst]),
            spec_value,
            minorant_value,
        )
    return MinorantReport(
        passed=passed,
        samples=samples,
        seed=seed,
        worst_excess=float(excess[worst]),
        worst_direction=directions[worst].tolist(),
        spec_systole=spec_value,
        minorant_systole=minorant_value,
    )


def classify_case(
    spec: GaugeSpec,
    s: float,
    minorant_gram: Optional[Matrix] = None,
    assume_hz: bool = True,
    samples: int = MINORANT_SAMPLES,
    seed: int = 0,
) -> CaseClassification:
    """
    Decide which hypothesis certifies equality of all normalized capacities with 2s:

        ellipsoid or l^2             -> Riemannian (f is its own minorant)
        lp with p < 2                -> LpWithSmallExponent (minorant weight^2 I)
        pullback f o A               -> the case of f, with minorant A^T G A
        user Gram passing the check  -> MinorantProvided
        otherwise                    -> HZOnly, or UpperBoundOnly when the c_HZ assumption is declined

    Args:
        spec: The gauge
        s: Its systole
        minorant_gram: An optional user supplied Gram matrix
        assume_hz: Whether capacities >= c_HZ may be assumed
        samples: Samples for verify_riemannian_minorant()
        seed: Seed for verify_riemannian_minorant()

    Returns:
        A CaseClassification.
    """
    if isinstance(spec, EllipsoidGauge):
        return CaseClassification(
            CapacityCase.riemannian,
            minorant=np.array(spec.gram),
            normalizing_map=ellipsoid_normalizing_map(spec.gram),
            notes=["the norm is induced by a flat Riemannian metric"],
        )
    if isinstance(spec, LpGauge) and spec.p <= 2.0:
        gram = spec.weight**2 * np.eye(spec.dimension)
        if spec.p == 2.0:
            return CaseClassification(
                CapacityCase.riemannian,
                minorant=gram,
                normalizing_map=ellipsoid_normalizing_map(gram),
                notes=["the norm is induced by a flat Riemannian metric"],
            )
        return CaseClassification(
            CapacityCase.lp_with_small_exponent,
            minorant=gram,
            normalizing_map=ellipsoid_normalizing_map(gram),
            notes=[f"l^p norms with p = {spec.p!r} <= 2 dominate the l^2 norm with the same systole"],
        )
    if isinstance(spec, PullbackGauge):
        base = classify_case(spec.base, s, None, assume_hz, samples, seed)
        if base.minorant is not None:
            gram = spec.matrix.T @ base.minorant @ spec.matrix
            return CaseClassification(
                base.case,
                minorant=gram,
                normalizing_map=ellipsoid_normalizing_map(gram),
                notes=base.notes + ["minorant pulled back along the basis change"],
            )

    notes = []
    if minorant_gram is not None:
        report = verify_riemannian_minorant(spec, minorant_gram, samples, seed, spec_systole=s)
        if report.passed:
            gram = np.asarray(minorant_gram, dtype=np.float64)
            return CaseClassification(
                CapacityCase.minorant_provided,
                minorant=gram,
                normalizing_map=ellipsoid_normalizing_map(gram),
                notes=["the supplied Gram matrix is a Riemannian minorant with the same systole"],
            )
        notes.append(
            f"the supplied Gram matrix is not a minorant with the same systole (excess {report.worst_excess!r}, "
            f"systoles {report.spec_systole!r} and {report.minorant_systole!r})"
        )

    if assume_hz:
        notes += [
            "equality holds for capacities c >= c_HZ, since " + HZ_CAPACITY_CITATION,
            "equality for all normalized capacities is not certified",
        ]
        return CaseClassification(CapacityCase.hz_only, notes=notes)
    notes.append("the value 2s is an upper bound; equality is not certified")
    return CaseClassification(CapacityCase.upper_bound_only, notes=notes)


def check_projection_injectivity(
    spec: GaugeSpec, s: float, samples: int = LOWER_BOUND_SAMPLES, seed: int = 0
) -> InjectivityReport:
    """
    Spot check that the quotient map R^n -> T^n is injective on (s/2) K: for sampled u in (s/2) K and every
    nonzero lattice vector v with f(v) < 3s/2, the translate u + v must leave (s/2) K. Longer lattice vectors
    move u out by the triangle inequality.
    """
    rng = np.random.default_rng(seed)
    directions = rng.standard_normal((samples, spec.dimension))
    radii = 0.5 * s * rng.uniform(0.0, 1.0, size=samples)
    points = directions * (radii / spec.evaluate(directions))[:, np.newaxis]

    short = np.array(enumerate_short_vectors(spec, 1.5 * s), dtype=np.float64).reshape(-1, spec.dimension)
    lattice = np.vstack([short, -short])
    if lattice.shape[0] == 0:
        return InjectivityReport(samples=samples, lattice_vectors=0, failures=0)
    translates = (points[:, np.newaxis, :] + lattice[np.newaxis, :, :]).reshape(-1, spec.dimension)
    values = spec.evaluate(translates).reshape(samples, -1)
    failures = int(np.count_nonzero(np.any(values < 0.5 * s * (1.0 - DEFAULT_TOLERANCES["open_body"]), axis=1)))
    return InjectivityReport(samples=samples, lattice_vectors=int(lattice.shape[0]), failures=failures)


def lower_certificate(
    spec: GaugeSpec,
    s: float,
    samples: int = LOWER_BOUND_SAMPLES,
    seed: int = 0,
    open_body_tolerance: float = DEFAULT_TOLERANCES["open_body"],
) -> LowerBoundEvidence:
    """
    Collect the evidence for the lower bound c >= 2s.

    1. No nonzero lattice vector lies in the open body s K (enumeration below s (1 - open_body_tolerance)).
    2. Sampled pairs (v, p) with f(v) < s/2 and f*(p) < 1 lie in the disc bundle, and the projection to the torus
       is injective on (s/2) K.
    3. The value c_HZ(K x K*) = 4 is cited.

    For oracle gauges the enumeration is not exhaustive and a successful check is only 'probable'.
    """
    short = enumerate_short_vectors(spec, s * (1.0 - open_body_tolerance))
    lattice_check = not short

    rng = np.random.default_rng(seed)
    directions = rng.standard_normal((samples, spec.dimension))
    radii = 0.5 * s * rng.uniform(0.0, 1.0, size=samples)
    positions = directions * (radii / spec.evaluate(directions))[:, np.newaxis]
    covectors = np.array([x.p for x in sample_disc_bundle(spec, samples, seed)]).reshape(-1, spec.dimension)
    inside = (spec.evaluate(positions) < 0.5 * s) & (spec.evaluate_dual(covectors) < 1.0)
    inclusion_failures = int(np.count_nonzero(~inside))

    injectivity = check_projection_injectivity(spec, s, samples, seed)
    if not lattice_check or inclusion_failures or not injectivity.passed:
        status = LowerBoundStatus.failed
        logger.warning("Lower bound evidence failed: short vectors %s", short[:10])
    elif not spec.exact:
        status = LowerBoundStatus.probable
    else:
        status = LowerBoundStatus.certified
    return LowerBoundEvidence(
        status=status,
        lattice_check=lattice_check,
        exhaustive=spec.exact,
        short_vectors=[list(v) for v in short],
        inclusion_samples=samples,
        inclusion_failures=inclusion_failures,
        injectivity=injectivity,
    )


def capacity(
    spec: GaugeSpec,
    samples: int = 10000,
    seed: int = 0,
    minorant_gram: Optional[Matrix] = None,
    assume_hz: bool = True,
    tolerances: Optional[Dict[str, float]] = None,
) -> CapacityCertificate:
    """
    Compute c = 2 sys(f) with a certificate for both bounds.

    Args:
        spec: The gauge f
        samples: Number of samples for the embedding check
        seed: Seed of all random sampling
        minorant_gram: An optional Gram matrix of a Riemannian minorant
        assume_hz: Whether capacities >= c_HZ may be assumed when no minorant is known
        tolerances: Overrides of DEFAULT_TOLERANCES

    Returns:
        A CapacityCertificate; certificate.passed tells whether all checks succeeded.
    """
    tolerance = {**DEFAULT_TOLERANCES, **(tolerances or {})}

    logger.info("Computing the systole of the %s gauge", spec.family.value)
    result = systole(spec)
    basis = unimodular_complete(result.u)
    widths = coordinate_widths(spec, basis)
    r1 = math.sqrt(2.0 * float(widths[0]) / math.pi)

    logger.info("Verifying the embedding into the cylinder of radius %r on %d samples", r1, samples)
    upper = verify_embedding_samples(
        spec,
        basis,
        widths,
        samples,
        seed,
        step=tolerance["fd_step"],
        defect_tolerance=tolerance["symplectic_defect"],
    )

    logger.info("Collecting lower bound evidence")
    lower = lower_certificate(
        spec, result.s, min(samples, LOWER_BOUND_SAMPLES), seed, open_body_tolerance=tolerance["open_body"]
    )
    classification = classify_case(
        spec, result.s, minorant_gram=minorant_gram, assume_hz=assume_hz, seed=seed
    )

    notes = list(classification.notes)
    if not result.exhaustive:
        notes.append("systole enumeration relies on approximate dual values and is not exhaustive")
    if classification.case == CapacityCase.upper_bound_only:
        notes.append("reported value is an upper bound")
    return CapacityCertificate(
        value=2.0 * result.s,
        systole=result,
        basis=basis,
        widths=[float(w) for w in widths],
        r1=r1,
        upper_report=upper,
        lower_lattice_check=lower.lattice_check,
        case=classification.case,
        lower_evidence=lower,
        minorant=classification.minorant,
        normalizing_map=classification.normalizing_map,
        notes=notes,
    )
