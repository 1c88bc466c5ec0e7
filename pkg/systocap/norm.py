# SPDX-FileCopyrightText: 2022 Contributors to the Systocap project
#
# SPDX-License-Identifier: MPL-2.0

"""
Flat reversible norms on R^n and their duals

A norm f is represented by a GaugeSpec. The open unit ball K = {v | f(v) < 1} and the polar body K* = {p | f*(p) < 1}
are never materialised, every computation goes through the gauge f and the dual gauge

    f*(p) = sup_{v in K} |p.v|

Provides
  1. The gauge families: LpGauge, EllipsoidGauge, PolytopeVGauge, PolytopeHGauge, OracleGauge and PullbackGauge
  2. Evaluation: gauge(), gauge_many(), dual_gauge(), dual_value(), dual_gauge_many()
  3. Geometry helpers: dual_spec(), sandwich_radii(), check_gauge_axioms()

Example usage
-------------

>>> from systocap.norm import EllipsoidGauge, LpGauge, dual_gauge, gauge
>>> gauge(LpGauge(dimension=2, p=1), [1, 1])
2.0
>>> dual_gauge(EllipsoidGauge([[4, 0], [0, 9]]), [2, 0])
1.0
"""

import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Union

import numpy as np
import sympy
from scipy.optimize import linprog, minimize_scalar
from scipy.spatial import ConvexHull

from .enum import GaugeFamily
from .errors import DimensionError, PreconditionError
from .validation import assert_valid_gauge_data

logger = logging.getLogger(__name__)

VectorLike = Union[Sequence[float], np.ndarray]
GaugeCallback = Callable[[np.ndarray], float]

# multi-start maximisation of |p.v| / f(v) for oracle gauges
ORACLE_DUAL_STARTS = 64
ORACLE_DUAL_SWEEPS = 4

AXIOM_TOLERANCE = 1e-9
ORACLE_AXIOM_TOLERANCE = 1e-6


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=np.float64)
    array.setflags(write=False)
    return array


class GaugeSpec(ABC):
    """
    A flat reversible norm f on R^n. Instances are immutable.

    Subclasses implement the vectorised evaluation of f and f* on the rows of a matrix, the dual and the scaled
    gauge. The attribute `exact` is False when dual values are only approximated (oracle gauges).
    """

    family: GaugeFamily
    exact: bool = True

    def __init__(self, dimension: int):
        self._dimension = int(dimension)

    @property
    def dimension(self) -> int:
        """
        The dimension n of the space the gauge lives on
        """
        return self._dimension

    @abstractmethod
    def evaluate(self, vectors: np.ndarray) -> np.ndarray:
        """
        Evaluate f on every row of an (m, n) array
        """

    @abstractmethod
    def evaluate_dual(self, covectors: np.ndarray) -> np.ndarray:
        """
        Evaluate f* on every row of an (m, n) array
        """

    @abstractmethod
    def dual(self) -> "GaugeSpec":
        """
        The dual gauge f* as a GaugeSpec
        """

    @abstractmethod
    def scaled(self, factor: float) -> "GaugeSpec":
        """
        The gauge t * f for t > 0
        """

    @abstractmethod
    def to_python(self) -> Dict[str, Any]:
        """
        A description of the gauge in native python types, as used in configurations and reports
        """

    def closed_form_sandwich(self) -> Optional["SandwichRadii"]:
        """
        Exact Euclidean sandwich radii, if the family has a closed form
        """
        return None

    def __repr__(self) -> str:
        return f"<{type(self).__name__}: {self.to_python()}>"


class LpGauge(GaugeSpec):
    """
    f(v) = weight * ||v||_p with 1 <= p <= inf
    """

    family = GaugeFamily.lp

    def __init__(self, dimension: int, p: float, weight: float = 1.0):
        assert_valid_gauge_data(GaugeFamily.lp, {"dim": dimension, "p": float(p), "weight": float(weight)})
        super().__init__(dimension)
        self.p = float(p)
        self.weight = float(weight)

    @property
    def conjugate_exponent(self) -> float:
        """
        The exponent q with 1/p + 1/q = 1
        """
        if self.p == 1.0:
            return math.inf
        if math.isinf(self.p):
            return 1.0
        return self.p / (self.p - 1.0)

    def evaluate(self, vectors: np.ndarray) -> np.ndarray:
        return self.weight * np.linalg.norm(vectors, ord=self.p, axis=1)

    def evaluate_dual(self, covectors: np.ndarray) -> np.ndarray:
        return np.linalg.norm(covectors, ord=self.conjugate_exponent, axis=1) / self.weight

    def dual(self) -> "LpGauge":
        return LpGauge(self.dimension, self.conjugate_exponent, 1.0 / self.weight)

    def scaled(self, factor: float) -> "LpGauge":
        return LpGauge(self.dimension, self.p, self.weight * factor)

    def to_python(self) -> Dict[str, Any]:
        return {
            "family": self.family.value,
            "dim": self.dimension,
            "p": "inf" if math.isinf(self.p) else self.p,
            "weight": self.weight,
        }

    def closed_form_sandwich(self) -> "SandwichRadii":
        # ||e||_p over Euclidean unit vectors ranges between 1 and n^(1/p - 1/2) (in either order)
        inverse_p = 0.0 if math.isinf(self.p) else 1.0 / self.p
        spread = self.dimension ** (inverse_p - 0.5)
        smallest, largest = min(1.0, spread), max(1.0, spread)
        return SandwichRadii(r_in=1.0 / (self.weight * largest), r_out=1.0 / (self.weight * smallest))


class EllipsoidGauge(GaugeSpec):
    """
    f(v) = sqrt(v^T Q v) for a symmetric positive definite Gram matrix Q. The Gram matrix may be given with Fraction
    entries; it is then also kept in exact form.
    """

    family = GaugeFamily.ellipsoid

    def __init__(self, gram: Union[Sequence[Sequence[Any]], np.ndarray]):
        rows = [list(row) for row in gram]
        exact_gram = None
        if all(isinstance(x, (int, Fraction)) and not isinstance(x, bool) for row in rows for x in row):
            exact_gram = tuple(tuple(Fraction(x) for x in row) for row in rows)
        matrix = np.array([[float(x) for x in row] for row in rows], dtype=np.float64)
        assert_valid_gauge_data(GaugeFamily.ellipsoid, {"gram": matrix})
        super().__init__(matrix.shape[0])
        self.gram = _frozen(matrix)
        self.exact_gram = exact_gram
        self._dual: Optional["EllipsoidGauge"] = None

    def evaluate(self, vectors: np.ndarray) -> np.ndarray:
        squares = np.einsum("ij,jk,ik->i", vectors, self.gram, vectors)
        return np.sqrt(np.maximum(squares, 0.0))

    def evaluate_dual(self, covectors: np.ndarray) -> np.ndarray:
        return self.dual().evaluate(covectors)

    def exact_square(self, vector: Sequence[int]) -> Optional[Fraction]:
        """
        f(v)^2 in exact arithmetic for an integer vector, if the Gram matrix is rational
        """
        if self.exact_gram is None:
            return None
        indices = range(self.dimension)
        return sum((self.exact_gram[i][j] * vector[i] * vector[j] for i in indices for j in indices), Fraction(0))

    def dual(self) -> "EllipsoidGauge":
        if self._dual is None:
            if self.exact_gram is not None:
                inverse = sympy.Matrix(self.exact_gram).inv()
                self._dual = EllipsoidGauge(
                    [[Fraction(int(x.p), int(x.q)) for x in inverse.row(i)] for i in range(self.dimension)]
                )
            else:
                inverse = np.linalg.inv(self.gram)
                self._dual = EllipsoidGauge(0.5 * (inverse + inverse.T))
            self._dual._dual = self
        return self._dual

    def scaled(self, factor: float) -> "EllipsoidGauge":
        if self.exact_gram is not None and isinstance(factor, (int, Fraction)):
            return EllipsoidGauge([[x * factor * factor for x in row] for row in self.exact_gram])
        return EllipsoidGauge(self.gram * float(factor) ** 2)

    def to_python(self) -> Dict[str, Any]:
        if self.exact_gram is not None:
            gram: List[List[Any]] = [[_rational_to_python(x) for x in row] for row in self.exact_gram]
        else:
            gram = self.gram.tolist()
        return {"family": self.family.value, "gram": gram}

    def closed_form_sandwich(self) -> "SandwichRadii":
        eigenvalues = np.linalg.eigvalsh(self.gram)
        return SandwichRadii(r_in=1.0 / math.sqrt(eigenvalues[-1]), r_out=1.0 / math.sqrt(eigenvalues[0]))


class PolytopeVGauge(GaugeSpec):
    """
    The gauge of K = conv(vertices) for a vertex set that is closed under negation and spans R^n. The facets of K
    are computed once, so f(v) = max_i (a_i.v) / b_i is evaluated in halfspace form.
    """

    family = GaugeFamily.polytope_v

    def __init__(self, vertices: Union[Sequence[Sequence[float]], np.ndarray]):
        array = np.array(vertices, dtype=np.float64)
        if array.ndim == 1 and array.size == 0:
            array = array.reshape(0, 0)
        assert_valid_gauge_data(GaugeFamily.polytope_v, {"vertices": array})
        super().__init__(array.shape[1])
        self.vertices = _frozen(array)
        if self.dimension == 1:
            radius = float(np.max(np.abs(array)))
            facet_normals, facet_offsets = np.array([[1.0], [-1.0]]), np.array([radius, radius])
        else:
            hull = ConvexHull(array)
            # qhull: normal.x + offset <= 0 inside, with unit normals and offset < 0 since 0 is interior
            facet_normals, facet_offsets = hull.equations[:, :-1], -hull.equations[:, -1]
        self.facet_normals = _frozen(facet_normals)
        self.facet_offsets = _frozen(facet_offsets)

    def evaluate(self, vectors: np.ndarray) -> np.ndarray:
        ratios = vectors @ (self.facet_normals / self.facet_offsets[:, np.newaxis]).T
        return np.maximum(np.max(ratios, axis=1), 0.0)

    def evaluate_dual(self, covectors: np.ndarray) -> np.ndarray:
        return np.max(np.abs(covectors @ self.vertices.T), axis=1)

    def dual(self) -> "PolytopeHGauge":
        return PolytopeHGauge(self.vertices, np.ones(self.vertices.shape[0]))

    def scaled(self, factor: float) -> "PolytopeVGauge":
        return PolytopeVGauge(self.vertices / float(factor))

    def to_python(self) -> Dict[str, Any]:
        return {"family": self.family.value, "vertices": self.vertices.tolist()}

    def closed_form_sandwich(self) -> "SandwichRadii":
        return SandwichRadii(
            r_in=float(np.min(self.facet_offsets / np.linalg.norm(self.facet_normals, axis=1))),
            r_out=float(np.max(np.linalg.norm(self.vertices, axis=1))),
        )


class PolytopeHGauge(GaugeSpec):
    """
    The gauge of K = {v | a_i.v <= b_i for all i}, for halfspaces closed under (a, b) -> (-a, b) with normals spanning
    R^n. The dual gauge is a linear program per covector.
    """

    family = GaugeFamily.polytope_h

    def __init__(
        self, normals: Union[Sequence[Sequence[float]], np.ndarray], offsets: Union[Sequence[float], np.ndarray]
    ):
        normal_array = np.array(normals, dtype=np.float64)
        offset_array = np.array(offsets, dtype=np.float64)
        if normal_array.ndim == 1 and normal_array.size == 0:
            normal_array = normal_array.reshape(0, 0)
        assert_valid_gauge_data(GaugeFamily.polytope_h, {"normals": normal_array, "offsets": offset_array})
        super().__init__(normal_array.shape[1])
        self.normals = _frozen(normal_array)
        self.offsets = _frozen(offset_array)

    def evaluate(self, vectors: np.ndarray) -> np.ndarray:
        ratios = vectors @ (self.normals / self.offsets[:, np.newaxis]).T
        return np.maximum(np.max(ratios, axis=1), 0.0)

    def evaluate_dual(self, covectors: np.ndarray) -> np.ndarray:
        return np.array([self._support(covector) for covector in covectors], dtype=np.float64)

    def _support(self, covector: np.ndarray) -> float:
        if not np.any(covector):
            return 0.0
        # sup_{v in K} |p.v| = sup_{v in K} p.v by central symmetry
        result = linprog(
            c=-covector,
            A_ub=self.normals,
            b_ub=self.offsets,
            bounds=[(None, None)] * self.dimension,
            method="highs",
        )
        if not result.success:
            raise PreconditionError(f"Support function linear program failed: {result.message}")
        return float(-result.fun)

    def dual(self) -> "PolytopeVGauge":
        return PolytopeVGauge(self.normals / self.offsets[:, np.newaxis])

    def scaled(self, factor: float) -> "PolytopeHGauge":
        return PolytopeHGauge(self.normals, self.offsets / float(factor))

    def to_python(self) -> Dict[str, Any]:
        return {"family": self.family.value, "normals": self.normals.tolist(), "offsets": self.offsets.tolist()}


class OracleGauge(GaugeSpec):
    """
    A gauge given by a callback v -> f(v). The callback must implement a reversible norm; check_gauge_axioms() tests
    that on samples. Dual values come from a multi-start maximisation and are certified lower bounds only.
    """

    family = GaugeFamily.oracle
    exact = False

    def __init__(self, dimension: int, callback: GaugeCallback, name: Optional[str] = None, seed: int = 0):
        assert_valid_gauge_data(GaugeFamily.oracle, {"dim": dimension, "callback": callback})
        super().__init__(dimension)
        self.callback = callback
        self.name = name if name is not None else getattr(callback, "__qualname__", repr(callback))
        self.seed = seed

    def evaluate(self, vectors: np.ndarray) -> np.ndarray:
        return np.array([float(self.callback(vector)) for vector in vectors], dtype=np.float64)

    def evaluate_dual(self, covectors: np.ndarray) -> np.ndarray:
        return np.array([self._maximize_ratio(covector) for covector in covectors], dtype=np.float64)

    def _ratio(self, covector: np.ndarray, direction: np.ndarray) -> float:
        value = float(self.callback(direction))
        if value <= 0.0:
            return 0.0
        return abs(float(covector @ direction)) / value

    def _maximize_ratio(self, covector: np.ndarray) -> float:
        norm = float(np.linalg.norm(covector))
        if norm == 0.0:
            return 0.0
        rng = np.random.default_rng(self.seed)
        starts = rng.standard_normal((ORACLE_DUAL_STARTS, self.dimension))
        starts[0] = covector
        starts /= np.linalg.norm(starts, axis=1)[:, np.newaxis]
        ratios = [self._ratio(covector, start) for start in starts]
        best = starts[int(np.argmax(ratios))]
        best_value = max(ratios)

        # refine along great circles through the incumbent, towards each coordinate axis
        half_width = math.pi / 4.0
        for _ in range(ORACLE_DUAL_SWEEPS):
            for axis in np.eye(self.dimension):
                tangent = axis - (axis @ best) * best
                tangent_norm = float(np.linalg.norm(tangent))
                if tangent_norm < 1e-12:
                    continue
                tangent /= tangent_norm

                def negative_ratio(angle: float, base=best, tangent=tangent) -> float:
                    return -self._ratio(covector, math.cos(angle) * base + math.sin(angle) * tangent)

                result = minimize_scalar(
                    negative_ratio, bounds=(-half_width, half_width), method="bounded", options={"xatol": 1e-12}
                )
                if -result.fun > best_value:
                    best_value = float(-result.fun)
                    best = math.cos(result.x) * best + math.sin(result.x) * tangent
                    best /= np.linalg.norm(best)
            half_width /= 4.0
        logger.debug("Oracle dual gauge of %s: %r after %d sweeps", covector, best_value, ORACLE_DUAL_SWEEPS)
        return best_value

    def dual(self) -> "OracleGauge":
        def dual_callback(covector: np.ndarray) -> float:
            return self._maximize_ratio(np.asarray(covector, dtype=np.float64))

        return OracleGauge(self.dimension, dual_callback, name=f"dual({self.name})", seed=self.seed)

    def scaled(self, factor: float) -> "OracleGauge":
        factor = float(factor)

        def scaled_callback(vector: np.ndarray) -> float:
            return factor * float(self.callback(vector))

        return OracleGauge(self.dimension, scaled_callback, name=f"{factor!r}*{self.name}", seed=self.seed)

    def to_python(self) -> Dict[str, Any]:
        return {"family": self.family.value, "dim": self.dimension, "callback": self.name}


class PullbackGauge(GaugeSpec):
    """
    The gauge f_A = f o A for an invertible matrix A, with dual f_A*(p) = f*(A^-T p). The inverse is passed in by
    the caller (exact for unimodular matrices, see systocap.lattice.pullback_gauge).
    """

    family = GaugeFamily.pullback

    def __init__(self, base: GaugeSpec, matrix: np.ndarray, inverse: np.ndarray):
        matrix = np.asarray(matrix, dtype=np.float64)
        inverse = np.asarray(inverse, dtype=np.float64)
        if matrix.shape != (base.dimension, base.dimension) or inverse.shape != matrix.shape:
            raise DimensionError(
                f"Pullback matrix of shape {matrix.shape} does not match a gauge of dimension {base.dimension}."
            )
        super().__init__(base.dimension)
        self.base = base
        self.matrix = _frozen(matrix)
        self.inverse = _frozen(inverse)
        self.exact = base.exact

    def evaluate(self, vectors: np.ndarray) -> np.ndarray:
        return self.base.evaluate(vectors @ self.matrix.T)

    def evaluate_dual(self, covectors: np.ndarray) -> np.ndarray:
        # rows p^T A^-1 are the covectors A^-T p
        return self.base.evaluate_dual(covectors @ self.inverse)

    def dual(self) -> "PullbackGauge":
        return PullbackGauge(self.base.dual(), self.inverse.T, self.matrix.T)

    def scaled(self, factor: float) -> "PullbackGauge":
        return PullbackGauge(self.base.scaled(factor), self.matrix, self.inverse)

    def to_python(self) -> Dict[str, Any]:
        return {
            "family": self.family.value,
            "base": self.base.to_python(),
            "matrix": [[_number_to_python(x) for x in row] for row in self.matrix],
        }


@dataclass(frozen=True)
class DualValue:
    """
    A dual gauge value f*(p). Approximate values are lower bounds from the multi-start maximisation of oracle gauges.
    """

    value: float
    approximate: bool = False


@dataclass(frozen=True)
class SandwichRadii:
    """
    Euclidean radii with r_in * B < K < r_out * B. Approximate radii come from oracle dual values.
    """

    r_in: float
    r_out: float
    approximate: bool = False


@dataclass
class AxiomReport:
    """
    The largest relative violations of the norm axioms found on random samples
    """

    samples: int
    seed: int
    tolerance: float
    homogeneity: float
    reversibility: float
    triangle: float
    positivity_failures: int
    violations: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        """
        True if no axiom is violated above the tolerance
        """
        return not self.violations


def _rational_to_python(value: Fraction) -> Union[int, str]:
    if value.denominator == 1:
        return int(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _number_to_python(value: float) -> Union[int, float]:
    if float(value).is_integer():
        return int(value)
    return float(value)


def as_vectors(spec: GaugeSpec, vectors: VectorLike) -> np.ndarray:
    """
    Convert a vector or a stack of vectors to an (m, n) float array, checking the dimension
    """
    array = np.asarray(vectors, dtype=np.float64)
    if array.ndim == 1:
        array = array[np.newaxis, :]
    if array.ndim != 2 or array.shape[1] != spec.dimension:
        raise DimensionError(
            f"Expected vectors of dimension {spec.dimension} for the {spec.family.value} gauge, got shape "
            f"{np.shape(vectors)}."
        )
    return array


def gauge(spec: GaugeSpec, v: VectorLike) -> float:
    """
    Evaluate the gauge f(v)

    Args:
        spec: The norm
        v: A vector of length n

    Returns:
        f(v) >= 0
    """
    if np.ndim(v) != 1:
        raise DimensionError(f"Expected a single vector, got shape {np.shape(v)}.")
    return float(spec.evaluate(as_vectors(spec, v))[0])


def gauge_many(spec: GaugeSpec, vectors: VectorLike) -> np.ndarray:
    """
    Evaluate the gauge on every row of an (m, n) array
    """
    return spec.evaluate(as_vectors(spec, vectors))


def dual_gauge(spec: GaugeSpec, p: VectorLike) -> float:
    """
    Evaluate the dual gauge f*(p) = sup_{v in K} |p.v|. For oracle gauges (spec.exact is False) the value is a
    lower bound found by multi-start maximisation.

    Args:
        spec: The norm
        p: A covector of length n

    Returns:
        f*(p) >= 0
    """
    if np.ndim(p) != 1:
        raise DimensionError(f"Expected a single covector, got shape {np.shape(p)}.")
    return float(spec.evaluate_dual(as_vectors(spec, p))[0])


def dual_value(spec: GaugeSpec, p: VectorLike) -> DualValue:
    """
    Evaluate the dual gauge like dual_gauge(), tagging the value approximate when it comes from an oracle gauge
    """
    value = dual_gauge(spec, p)
    # f*(0) = 0 holds for every family
    return DualValue(value=value, approximate=not spec.exact and value > 0.0)


def dual_gauge_many(spec: GaugeSpec, covectors: VectorLike) -> np.ndarray:
    """
    Evaluate the dual gauge on every row of an (m, n) array
    """
    return spec.evaluate_dual(as_vectors(spec, covectors))


def dual_spec(spec: GaugeSpec) -> GaugeSpec:
    """
    The dual norm f* as a gauge of its own, i.e. the gauge of the polar body K*.
    """
    return spec.dual()


def sandwich_radii(spec: GaugeSpec) -> SandwichRadii:
    """
    Euclidean radii r_in <= r_out with r_in * B < K < r_out * B. Closed forms are used where the family has one,
    otherwise the coordinate bounds

        r_out = sqrt(n) * max_k f*(e_k)     and     r_in = 1 / (sqrt(n) * max_k f(e_k))

    which follow from |v_k| <= f*(e_k) f(v) and f(v) <= sum_k |v_k| f(e_k).
    """
    closed_form = spec.closed_form_sandwich()
    if closed_form is not None:
        return closed_form
    basis = np.eye(spec.dimension)
    root_n = math.sqrt(spec.dimension)
    return SandwichRadii(
        r_in=1.0 / (root_n * float(np.max(spec.evaluate(basis)))),
        r_out=root_n * float(np.max(spec.evaluate_dual(basis))),
        approximate=not spec.exact,
    )


def check_gauge_axioms(
    spec: GaugeSpec, sample_count: int, seed: int, tolerance: Optional[float] = None
) -> AxiomReport:
    """
    Test the norm axioms on random samples: positivity, positive homogeneity (t = 0.5, 2, 10), reversibility and
    the triangle inequality. Violations are measured relative to the values involved.

    Args:
        spec: The norm
        sample_count: Number of sampled vectors (and pairs of vectors)
        seed: Seed of the random generator, the report is deterministic given the seed
        tolerance: Largest accepted relative violation, by default 1e-9 (1e-6 for oracle gauges)

    Returns:
        An AxiomReport; report.passed tells whether all axioms hold within the tolerance.
    """
    if sample_count < 1:
        raise PreconditionError(f"At least one sample is required, got {sample_count}.")
    if tolerance is None:
        tolerance = AXIOM_TOLERANCE if spec.exact else ORACLE_AXIOM_TOLERANCE

    rng = np.random.default_rng(seed)
    first = rng.standard_normal((sample_count, spec.dimension))
    second = rng.standard_normal((sample_count, spec.dimension))
    first_values = spec.evaluate(first)
    second_values = spec.evaluate(second)

    positivity_failures = int(np.count_nonzero(first_values <= 0.0))
    if spec.evaluate(np.zeros((1, spec.dimension)))[0] != 0.0:
        positivity_failures += 1
    safe = np.where(first_values > 0.0, first_values, 1.0)

    homogeneity = max(
        float(np.max(np.abs(spec.evaluate(factor * first) - factor * first_values) / (factor * safe)))
        for factor in (0.5, 2.0, 10.0)
    )
    reversibility = float(np.max(np.abs(spec.evaluate(-first) - first_values) / safe))
    sums = first_values + second_values
    triangle = float(
        np.max(np.maximum(spec.evaluate(first + second) - sums, 0.0) / np.where(sums > 0.0, sums, 1.0))
    )

    violations = []
    if positivity_failures:
        violations.append(f"positivity fails for {positivity_failures} samples")
    for name, value in (("homogeneity", homogeneity), ("reversibility", reversibility), ("triangle", triangle)):
        if value > tolerance:
            violations.append(f"{name} violated by {value!r} (tolerance {tolerance!r})")
    if violations:
        logger.warning("Gauge %s violates the norm axioms: %s", spec, "; ".join(violations))

    return AxiomReport(
        samples=sample_count,
        seed=seed,
        tolerance=tolerance,
        homogeneity=homogeneity,
        reversibility=reversibility,
        triangle=triangle,
        positivity_failures=positivity_failures,
        violations=violations,
    )
