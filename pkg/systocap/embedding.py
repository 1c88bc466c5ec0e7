# SPDX-FileCopyrightText: 2022 Contributors to the Systocap project
#
# SPDX-License-Identifier: MPL-2.0

"""
The explicit symplectic embedding of a disc cotangent bundle into a cylinder, and its numerical verification

For a reduced gauge f_A (f_A(e_1) = s) every covector p of the disc bundle satisfies |p_k| < s_k with the widths
s_k = f_A(e_k). Splitting T*T^n into the factors (q_k, p_k) and mapping each annulus T x (-s_k, s_k) onto a disc
of area 2 s_k gives an embedding into the cylinder Z_r1 with pi r1^2 = 2 s_1.

Flattened coordinates: phase points are (p_1..p_n, q_1..q_n), cylinder points (x_1..x_n, y_1..y_n) with
z_k = x_k + i y_k. Both symplectic forms are then represented by Omega = [[0, I], [-I, 0]].
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.spatial import cKDTree

from .errors import DimensionError, EmbeddingDomainError, PreconditionError, SamplingError, WidthViolationError
from .lattice import UnimodularMatrix
from .norm import GaugeSpec

logger = logging.getLogger(__name__)

PhaseMap = Callable[[np.ndarray], np.ndarray]

DEFAULT_STEP = 1e-5
DEFAULT_DEFECT_TOLERANCE = 1e-6
MAX_CONSECUTIVE_REJECTIONS = 10**6
# images closer than this are compared through their preimages
COLLISION_RADIUS = 1e-9
# preimages further apart than this are distinct points
PREIMAGE_SEPARATION = 1e-6
# number of samples on which the finite difference defect is measured
DEFECT_SAMPLES = 100
SAMPLING_BATCH = 4096
# rounds of the directed search in estimate_widths(), each halving the perturbation radius
WIDTH_REFINEMENT_ROUNDS = 12


@dataclass(frozen=True)
class PhasePoint:
    """
    A point (q, p) of T*T^n; q is reduced to [0, 1) on construction
    """

    q: np.ndarray
    p: np.ndarray

    def __post_init__(self):
        q = np.mod(np.asarray(self.q, dtype=np.float64), 1.0)
        # np.mod can round -tiny up to 1.0
        q[q >= 1.0] = 0.0
        p = np.asarray(self.p, dtype=np.float64)
        if q.ndim != 1 or q.shape != p.shape:
            raise DimensionError(f"Phase point coordinates of shapes {q.shape} and {p.shape} do not match.")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "p", p)

    @property
    def dimension(self) -> int:
        """
        The dimension n of the torus
        """
        return self.q.shape[0]

    def flatten(self) -> np.ndarray:
        """
        The vector (p, q) of length 2n
        """
        return np.concatenate([self.p, self.q])

    @classmethod
    def from_flat(cls, vector: np.ndarray) -> "PhasePoint":
        """
        Inverse of flatten()
        """
        n = len(vector) // 2
        return cls(q=vector[n:], p=vector[:n])


@dataclass(frozen=True)
class CylinderPoint:
    """
    A point z of C^n; for images of the embedding z_1 lies in the disc D_r1
    """

    z: np.ndarray

    def flatten(self) -> np.ndarray:
        """
        The vector (Re z, Im z) of length 2n
        """
        return np.concatenate([self.z.real, self.z.imag])


@dataclass
class EmbeddingReport:
    """
    Results of the sampled verification of the embedding. A passing report has a symplectic defect below the
    tolerance, no containment failures and no collisions.
    """

    samples: int
    max_symplectic_defect: float
    containment_failures: int
    collision_pairs: int
    r1: float
    seed: int
    widths: Tuple[float, ...] = ()
    defect_samples: int = 0
    defect_tolerance: float = DEFAULT_DEFECT_TOLERANCE
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        """
        True if all checks succeeded
        """
        return (
            self.max_symplectic_defect < self.defect_tolerance
            and self.containment_failures == 0
            and self.collision_pairs == 0
        )


def annulus_to_disc(s_k: float, q: float, p: float) -> complex:
    """
    Map the annulus T x (-s_k, s_k) onto the punctured disc of area 2 s_k:

        (q, p) -> sqrt((p + s_k) / pi) exp(2 pi i q)

    Raises:
        EmbeddingDomainError if p is outside (-s_k, s_k).
    """
    if not -s_k < p < s_k:
        raise EmbeddingDomainError(f"Annulus coordinate p = {p!r} is outside of (-{s_k!r}, {s_k!r}).")
    return complex(math.sqrt((p + s_k) / math.pi) * np.exp(2j * math.pi * q))


def annulus_to_disc_inverse(s_k: float, z: complex) -> Tuple[float, float]:
    """
    The inverse of annulus_to_disc(): z -> (arg(z) / 2 pi mod 1, pi |z|^2 - s_k)

    Raises:
        EmbeddingDomainError for z = 0 or if z lies outside the disc of area 2 s_k.
    """
    if z == 0:
        raise EmbeddingDomainError("The angle of z = 0 is undefined.")
    p = math.pi * abs(z) ** 2 - s_k
    if not -s_k < p < s_k:
        raise EmbeddingDomainError(f"Point {z!r} lies outside of the disc of area {2 * s_k!r}.")
    q = (np.angle(z) / (2.0 * math.pi)) % 1.0
    return (0.0 if q >= 1.0 else float(q)), p


def coordinate_splitting(x: PhasePoint) -> List[Tuple[float, float]]:
    """
    Split T*T^n into the factors T*T^1: (q, p) -> [(q_1, p_1), ..., (q_n, p_n)]
    """
    return [(float(q), float(p)) for q, p in zip(x.q, x.p)]


def cotangent_lift(basis: UnimodularMatrix, x: PhasePoint) -> PhasePoint:
    """
    The cotangent lift of the torus map [A]: (q, p) -> (A q mod 1, A^-T p). It maps the disc bundle of f o A onto
    the disc bundle of f.
    """
    if basis.dimension != x.dimension:
        raise DimensionError(
            f"Matrix of size {basis.dimension} does not act on a phase point of dimension {x.dimension}."
        )
    return PhasePoint(q=basis.array @ x.q, p=basis.inverse().array.T @ x.p)


def coordinate_widths(spec: GaugeSpec, basis: UnimodularMatrix) -> np.ndarray:
    """
    The widths s_k = f(A e_k) = f_A(e_k)
    """
    return spec.evaluate(basis.array.T.astype(np.float64))


def _embed(
    basis: UnimodularMatrix, widths: np.ndarray, q: np.ndarray, p: np.ndarray
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Vectorised embedding of the rows of q and p. Returns the images and the reduced covectors A^T p, rows with a
    width violation get a NaN image.
    """
    reduced_q = np.mod(q @ basis.inverse().array.T.astype(np.float64), 1.0)
    reduced_p = p @ basis.array.astype(np.float64)
    inside = np.all(np.abs(reduced_p) < widths, axis=1)
    radii = np.sqrt(np.maximum(reduced_p + widths, 0.0) / math.pi)
    images = radii * np.exp(2j * math.pi * reduced_q)
    images[~inside] = np.nan
    return images, reduced_p


def full_embedding(
    spec: GaugeSpec, cert_basis: UnimodularMatrix, widths: Sequence[float], x: PhasePoint
) -> CylinderPoint:
    """
    Embed a point of the disc bundle of f into the cylinder Z_r1.

    The point is moved to the disc bundle of the reduced gauge f_A by the inverse cotangent lift
    (q, p) -> (A^-1 q mod 1, A^T p), split into factors, and every factor is mapped by annulus_to_disc() with
    width s_k. For A = identity this is the composite on the reduced gauge itself.

    Args:
        spec: The gauge f
        cert_basis: The basis A of reduce_norm()
        widths: The widths s_k = f_A(e_k)
        x: A point with f*(p) < 1

    Raises:
        WidthViolationError if |(A^T p)_k| >= s_k for some k.

    Returns:
        The image point.
    """
    widths_array = np.asarray(widths, dtype=np.float64)
    if x.dimension != spec.dimension or widths_array.shape != (spec.dimension,):
        raise DimensionError(f"Phase point and widths should have dimension {spec.dimension}.")
    images, reduced_p = _embed(cert_basis, widths_array, x.q[np.newaxis, :], x.p[np.newaxis, :])
    for k, (value, width) in enumerate(zip(reduced_p[0], widths_array)):
        if not abs(value) < width:
            raise WidthViolationError(k, float(value), float(width))
    return CylinderPoint(images[0])


def embedding_map(spec: GaugeSpec, cert_basis: UnimodularMatrix, widths: Sequence[float]) -> PhaseMap:
    """
    full_embedding() as a map on flattened coordinates, for verify_symplectic()
    """

    def phase_map(vector: np.ndarray) -> np.ndarray:
        return full_embedding(spec, cert_basis, widths, PhasePoint.from_flat(vector)).flatten()

    return phase_map


def annulus_map(s_k: float) -> PhaseMap:
    """
    annulus_to_disc() as a map (p, q) -> (x, y) on flattened coordinates
    """

    def phase_map(vector: np.ndarray) -> np.ndarray:
        z = annulus_to_disc(s_k, vector[1], vector[0])
        return np.array([z.real, z.imag])

    return phase_map


def lift_map(basis: UnimodularMatrix) -> PhaseMap:
    """
    cotangent_lift() as a map on flattened coordinates; the q outputs are periodic
    """

    def phase_map(vector: np.ndarray) -> np.ndarray:
        return cotangent_lift(basis, PhasePoint.from_flat(vector)).flatten()

    return phase_map


def symplectic_matrix(dimension: int) -> np.ndarray:
    """
    Omega = [[0, I], [-I, 0]] of size 2n
    """
    identity = np.eye(dimension)
    zero = np.zeros((dimension, dimension))
    return np.block([[zero, identity], [-identity, zero]])


def verify_symplectic(
    phase_map: PhaseMap,
    x: np.ndarray,
    step: float = DEFAULT_STEP,
    periodic_outputs: Optional[Sequence[bool]] = None,
) -> float:
    """
    Measure how far a map is from being symplectic at a point: with J the central finite difference Jacobian, the
    defect is the largest entry of |J^T Omega J - Omega|.

    Args:
        phase_map: A map on flattened coordinates (length 2n to length 2n)
        x: The flattened point, or a PhasePoint
        step: The finite difference step
        periodic_outputs: Output coordinates that are defined mod 1; their differences are wrapped

    Raises:
        PreconditionError for a non-positive step.
        EmbeddingDomainError if x +- step leaves the domain of the map.

    Returns:
        The defect.
    """
    if not step > 0.0:
        raise PreconditionError(f"The finite difference step should be positive, got {step!r}.")
    point = x.flatten() if isinstance(x, PhasePoint) else np.asarray(x, dtype=np.float64)
    size = point.shape[0]
    if size % 2 != 0:
        raise DimensionError(f"Flattened phase points have even length, got {size}.")
    wrap = np.zeros(size, dtype=bool) if periodic_outputs is None else np.asarray(periodic_outputs, dtype=bool)

    jacobian = np.empty((size, size))
    for j in range(size):
        offset = np.zeros(size)
        offset[j] = step
        try:
            forward, backward = phase_map(point + offset), phase_map(point - offset)
        except (EmbeddingDomainError, WidthViolationError) as ex:
            raise EmbeddingDomainError(f"Step {step!r} too large for the domain margin at {point}: {ex}") from ex
        difference = np.asarray(forward, dtype=np.float64) - np.asarray(backward, dtype=np.float64)
        difference[wrap] -= np.round(difference[wrap])
        jacobian[:, j] = difference / (2.0 * step)

    omega = symplectic_matrix(size // 2)
    return float(np.max(np.abs(jacobian.T @ omega @ jacobian - omega)))


def sample_disc_bundle(spec: GaugeSpec, count: int, seed: int) -> List[PhasePoint]:
    """
    Draw points of the disc bundle {(q, p) | f*(p) < 1}: q uniform on the torus, p by rejection sampling in the box
    |p_k| < f(e_k), which contains the polar body.

    Raises:
        SamplingError after 10^6 consecutive rejections.
    """
    rng = np.random.default_rng(seed)
    half_widths = spec.evaluate(np.eye(spec.dimension))
    accepted: List[np.ndarray] = []
    consecutive = 0
    drawn = 0
    while len(accepted) < count:
        batch = min(SAMPLING_BATCH, max(64, 2 * (count - len(accepted))))
        candidates = rng.uniform(-half_widths, half_widths, size=(batch, spec.dimension))
        inside = spec.evaluate_dual(candidates) < 1.0
        drawn += batch
        hits = np.flatnonzero(inside)
        if hits.size == 0:
            consecutive += batch
            if consecutive >= MAX_CONSECUTIVE_REJECTIONS:
                raise SamplingError(
                    f"Rejection sampling of the polar body failed {consecutive} consecutive times; "
                    "the gauge is probably degenerate."
                )
            continue
        consecutive = batch - 1 - int(hits[-1])
        accepted.extend(candidates[hits][: count - len(accepted)])
    logger.debug("Sampled %d covectors out of %d candidates", count, drawn)
    positions = rng.uniform(0.0, 1.0, size=(count, spec.dimension))
    return [PhasePoint(q=q, p=p) for q, p in zip(positions, accepted)]


def estimate_widths(spec: GaugeSpec, count: int, seed: int) -> np.ndarray:
    """
    Estimate s_k = sup_{p in K*} |p_k| from below with boundary points p = d / f*(d). Random directions d are
    followed by a directed search that perturbs the best direction of every coordinate with a shrinking radius.
    The exact value is f(e_k).
    """
    if count < 1:
        raise PreconditionError(f"At least one sample is required, got {count}.")
    dimension = spec.dimension
    rng = np.random.default_rng(seed)
    directions = np.vstack([np.eye(dimension), rng.standard_normal((count, dimension))])
    boundary = np.abs(directions / spec.evaluate_dual(directions)[:, np.newaxis])
    best = directions[np.argmax(boundary, axis=0)]
    estimate = np.max(boundary, axis=0)

    trials = max(1, count // (WIDTH_REFINEMENT_ROUNDS * dimension))
    radius = 0.5
    for _ in range(WIDTH_REFINEMENT_ROUNDS):
        for k in range(dimension):
            candidates = best[k] / np.linalg.norm(best[k]) + radius * rng.standard_normal((trials, dimension))
            values = np.abs(candidates[:, k] / spec.evaluate_dual(candidates))
            i = int(np.argmax(values))
            if values[i] > estimate[k]:
                estimate[k] = values[i]
                best[k] = candidates[i]
        radius *= 0.5
    logger.debug("Width estimates %s from %d directions", estimate.tolist(), count)
    return estimate


def _preimage_distance(first: PhasePoint, second: PhasePoint) -> float:
    dq = np.abs(first.q - second.q)
    dq = np.minimum(dq, 1.0 - dq)
    return float(math.sqrt(float(np.sum(dq**2) + np.sum((first.p - second.p) ** 2))))


def _count_collisions(points: List[PhasePoint], images: np.ndarray) -> int:
    finite = np.flatnonzero(np.all(np.isfinite(images), axis=1))
    if finite.size < 2:
        return 0
    tree = cKDTree(images[finite])
    collisions = 0
    for i, j in tree.query_pairs(r=COLLISION_RADIUS):
        if _preimage_distance(points[finite[i]], points[finite[j]]) > PREIMAGE_SEPARATION:
            collisions += 1
    return collisions


def verify_embedding_samples(
    spec: GaugeSpec,
    cert_basis: UnimodularMatrix,
    widths: Sequence[float],
    count: int,
    seed: int,
    step: float = DEFAULT_STEP,
    defect_tolerance: float = DEFAULT_DEFECT_TOLERANCE,
    samples: Optional[List[PhasePoint]] = None,
) -> EmbeddingReport:
    """
    Check the embedding on sampled points of the disc bundle: containment in the cylinder, injectivity (no two
    distinct preimages with coinciding images) and the symplectic defect on up to 100 samples that keep a margin
    of max(10 step, 0.05 s_k) from the annulus boundaries.

    Args:
        spec: The gauge f
        cert_basis: The basis A of reduce_norm()
        widths: The widths s_k = f_A(e_k)
        count: The number of samples, at least 2
        seed: Seed of the sampler
        step: Finite difference step
        defect_tolerance: Largest accepted symplectic defect
        samples: Explicit sample points, replacing the sampler

    Returns:
        An EmbeddingReport.
    """
    if count < 2:
        raise PreconditionError(f"The embedding check needs at least 2 samples, got {count}.")
    widths_array = np.asarray(widths, dtype=np.float64)
    points = samples if samples is not None else sample_disc_bundle(spec, count, seed)
    q = np.array([x.q for x in points])
    p = np.array([x.p for x in points])
    images, reduced_p = _embed(cert_basis, widths_array, q, p)

    failures: List[str] = []
    outside = np.any(np.isnan(images), axis=1)
    area = math.pi * np.abs(np.where(outside[:, np.newaxis], 0.0, images)) ** 2
    outside |= np.any(area >= 2.0 * widths_array, axis=1)
    containment_failures = int(np.count_nonzero(outside))
    if containment_failures:
        failures.append(f"{containment_failures} samples are not contained in the cylinder")

    flat_images = np.hstack([images.real, images.imag])
    collision_pairs = _count_collisions(points, flat_images)
    if collision_pairs:
        failures.append(f"{collision_pairs} pairs of distinct samples have coinciding images")

    margins = np.maximum(10.0 * step, 0.05 * widths_array)
    eligible = np.flatnonzero(~outside & np.all(np.abs(reduced_p) <= widths_array - margins, axis=1))
    phase_map = embedding_map(spec, cert_basis, widths_array)
    defects = []
    for index in eligible[:DEFECT_SAMPLES]:
        try:
            defects.append(verify_symplectic(phase_map, points[index], step))
        except EmbeddingDomainError as ex:
            logger.debug("Skipping sample %d in the symplectic check: %s", index, ex)
    if not defects:
        logger.warning("No sample kept enough distance from the annulus boundaries for the symplectic check")
    max_defect = max(defects, default=0.0)
    if max_defect >= defect_tolerance:
        failures.append(f"symplectic defect {max_defect!r} exceeds {defect_tolerance!r}")

    return EmbeddingReport(
        samples=len(points),
        max_symplectic_defect=max_defect,
        containment_failures=containment_failures,
        collision_pairs=collision_pairs,
        r1=math.sqrt(2.0 * float(widths_array[0]) / math.pi),
        seed=seed,
        widths=tuple(float(w) for w in widths_array),
        defect_samples=len(defects),
        defect_tolerance=defect_tolerance,
        failures=failures,
    )
