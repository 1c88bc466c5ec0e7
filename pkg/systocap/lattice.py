# SPDX-FileCopyrightText: 2022 Contributors to the Systocap project
#
# SPDX-License-Identifier: MPL-2.0

"""
Shortest vectors of the standard lattice Z^n for a norm f, and unimodular completion

The systole sys(f) = min{f(v) | v in Z^n, v != 0} is found by enumeration of a coordinate box. For every vector v
and every coordinate k we have |v_k| = |e_k.v| <= f*(e_k) f(v), so all vectors with f(v) <= s lie in the box
|v_k| <= floor(f*(e_k) s). The box shrinks whenever a shorter vector is found.

Integer vectors are returned sign-normalized (first nonzero entry positive) and ordered by canonical_key().
"""

import itertools
import logging
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np
import sympy

from .errors import DimensionError, EnumerationLimitError, PreconditionError
from .norm import EllipsoidGauge, GaugeSpec, PolytopeHGauge, PolytopeVGauge, PullbackGauge

logger = logging.getLogger(__name__)

IntVector = Tuple[int, ...]

DEFAULT_ENUMERATION_CAP = 10**9
ENUMERATION_CAP_VARIABLE = "SYSTOCAP_ENUM_CAP"
# vectors whose gauges agree within this relative tolerance are tied
TIE_TOLERANCE = 1e-12
# relative widening of the coordinate box against rounding in f*(e_k)
BOX_SLACK = 1e-9
# maximal number of points in the vectorised trailing block of the enumeration
TRAILING_BLOCK_LIMIT = 2**18


class UnimodularMatrix:
    """
    An n x n integer matrix with determinant +1, checked in exact arithmetic on construction.
    """

    def __init__(self, entries: Union[Sequence[Sequence[int]], np.ndarray]):
        rows = [list(row) for row in entries]
        size = len(rows)
        if size == 0 or any(len(row) != size for row in rows):
            raise DimensionError(f"A unimodular matrix must be square and non-empty, got {len(rows)} rows.")
        for row in rows:
            for value in row:
                if isinstance(value, bool) or not float(value).is_integer():
                    raise PreconditionError(f"Unimodular matrix entries must be integers, got {value!r}.")
        self.entries: Tuple[IntVector, ...] = tuple(tuple(int(value) for value in row) for row in rows)
        determinant = sympy.Matrix(self.entries).det()
        if determinant != 1:
            raise PreconditionError(f"Matrix {self.to_python()} has determinant {determinant}, not +1.")
        self._inverse: Optional["UnimodularMatrix"] = None

    @property
    def dimension(self) -> int:
        """
        The size n of the matrix
        """
        return len(self.entries)

    @property
    def array(self) -> np.ndarray:
        """
        The matrix as an integer numpy array
        """
        return np.array(self.entries, dtype=np.int64)

    def column(self, index: int) -> IntVector:
        """
        The column A e_index
        """
        return tuple(row[index] for row in self.entries)

    def inverse(self) -> "UnimodularMatrix":
        """
        The exact inverse, which is again an integer matrix with determinant +1
        """
        if self._inverse is None:
            inverse = sympy.Matrix(self.entries).inv()
            self._inverse = UnimodularMatrix([[int(inverse[i, j]) for j in range(self.dimension)]
                                              for i in range(self.dimension)])
            self._inverse._inverse = self
        return self._inverse

    def is_identity(self) -> bool:
        """
        True for the identity matrix
        """
        return all(value == int(i == j) for i, row in enumerate(self.entries) for j, value in enumerate(row))

    def to_python(self) -> List[List[int]]:
        """
        The entries as nested lists
        """
        return [list(row) for row in self.entries]

    def __matmul__(self, other: "UnimodularMatrix") -> "UnimodularMatrix":
        return UnimodularMatrix((sympy.Matrix(self.entries) * sympy.Matrix(other.entries)).tolist())

    def __eq__(self, other) -> bool:
        return isinstance(other, UnimodularMatrix) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"UnimodularMatrix({self.to_python()})"

    @classmethod
    def identity(cls, dimension: int) -> "UnimodularMatrix":
        """
        The n x n identity matrix
        """
        return cls([[int(i == j) for j in range(dimension)] for i in range(dimension)])


@dataclass(frozen=True)
class SystoleResult:
    """
    The systole s, the canonical minimizer u and all sign-normalized minimizers. exhaustive is False when the
    enumeration box came from approximate dual values (oracle gauges).
    """

    s: float
    u: IntVector
    exhaustive: bool
    minimizers: Tuple[IntVector, ...] = ()


class ReducedNorm(NamedTuple):
    """
    The pulled back gauge f_A = f o A with f_A(e_1) = s, the basis A and the systole s
    """

    spec: GaugeSpec
    basis: UnimodularMatrix
    systole: float


def canonical_key(vector: Sequence[int]) -> Tuple[Tuple[int, bool], ...]:
    """
    Sort key for integer vectors: coordinate by coordinate, smaller magnitudes first and a positive entry before its
    negative. E.g. (0, 1) < (1, 1) < (1, -1) < (2, 0).
    """
    return tuple((abs(x), x < 0) for x in vector)


def sign_normalize(vector: Sequence[int]) -> IntVector:
    """
    Negate the vector if its first nonzero entry is negative
    """
    for x in vector:
        if x != 0:
            return tuple(int(y) for y in vector) if x > 0 else tuple(-int(y) for y in vector)
    return tuple(int(y) for y in vector)


def enumeration_cap() -> int:
    """
    The largest number of box points an enumeration may visit, read from SYSTOCAP_ENUM_CAP (default 10^9)
    """
    value = os.environ.get(ENUMERATION_CAP_VARIABLE)
    if value is None:
        return DEFAULT_ENUMERATION_CAP
    try:
        cap = int(value)
    except ValueError as ex:
        raise PreconditionError(f"{ENUMERATION_CAP_VARIABLE} should be an integer, got {value!r}.") from ex
    if cap < 1:
        raise PreconditionError(f"{ENUMERATION_CAP_VARIABLE} should be positive, got {cap}.")
    return cap


def _coordinate_duals(spec: GaugeSpec) -> np.ndarray:
    duals = spec.evaluate_dual(np.eye(spec.dimension))
    if not np.all(np.isfinite(duals)) or np.any(duals <= 0.0):
        raise PreconditionError(f"Dual gauge values {duals.tolist()} of the coordinate covectors are not usable.")
    return duals


def _box(duals: np.ndarray, bound: float) -> np.ndarray:
    return np.floor(duals * bound * (1.0 + BOX_SLACK)).astype(np.int64)


def _box_size(box: np.ndarray) -> int:
    return reduce(lambda size, b: size * (2 * int(b) + 1), box, 1)


def _signed_range(bound: int) -> List[int]:
    # 0, 1, -1, 2, -2, ... so that short vectors come first
    values = [0]
    for x in range(1, bound + 1):
        values += [x, -x]
    return values


def _sign_normalized_rows(block: np.ndarray) -> np.ndarray:
    nonzero = block != 0
    first = np.argmax(nonzero, axis=1)
    return block[block[np.arange(block.shape[0]), first] > 0]


def _chunks(box: np.ndarray) -> Tuple[int, np.ndarray, Iterator[IntVector]]:
    """
    Split the box into leading coordinates (iterated in python) and a trailing block (vectorised)
    """
    dimension = len(box)
    split = dimension - 1
    size = 2 * int(box[-1]) + 1
    while split > 0 and size * (2 * int(box[split - 1]) + 1) <= TRAILING_BLOCK_LIMIT:
        split -= 1
        size *= 2 * int(box[split]) + 1
    trailing = np.array(
        list(itertools.product(*(_signed_range(int(b)) for b in box[split:]))), dtype=np.int64
    ).reshape(-1, dimension - split)
    leading = itertools.product(*(_signed_range(int(b)) for b in box[:split]))
    return split, trailing, leading


def _visit(
    spec: GaugeSpec, box: np.ndarray, shrink=None
) -> Iterator[Tuple[np.ndarray, np.ndarray]]:
    """
    Yield (vectors, gauge values) for all sign-normalized nonzero points of the box, chunk by chunk. If shrink is
    given it is called after every chunk and returns the (possibly smaller) box for the remaining chunks.
    """
    split, trailing, leading = _chunks(box)
    for lead in leading:
        if any(abs(x) > b for x, b in zip(lead, box[:split])):
            continue
        first_nonzero = next((x for x in lead if x != 0), 0)
        if first_nonzero < 0:
            continue
        tail = trailing if first_nonzero > 0 else _sign_normalized_rows(trailing)
        if tail.shape[0] == 0:
            continue
        vectors = np.hstack([np.broadcast_to(np.array(lead, dtype=np.int64), (tail.shape[0], split)), tail])
        yield vectors, spec.evaluate(vectors.astype(np.float64))
        if shrink is not None:
            new_box = shrink()
            if np.any(new_box < box):
                box = np.minimum(box, new_box)
                trailing = trailing[np.all(np.abs(trailing) <= box[split:], axis=1)]


def enumerate_short_vectors(spec: GaugeSpec, bound: float) -> List[IntVector]:
    """
    All sign-normalized nonzero integer vectors v with f(v) <= bound, sorted by canonical_key().

    Args:
        spec: The norm
        bound: A positive bound

    Raises:
        PreconditionError if the bound is not positive.
        EnumerationLimitError if the coordinate box holds more points than enumeration_cap().

    Returns:
        The list of short vectors, empty if there are none.
    """
    if not bound > 0.0 or not math.isfinite(bound):
        raise PreconditionError(f"The bound should be positive and finite, got {bound!r}.")
    box = _box(_coordinate_duals(spec), bound)
    size = _box_size(box)
    cap = enumeration_cap()
    if size > cap:
        raise EnumerationLimitError(size, cap)
    logger.debug("Enumerating %d box points %s for bound %r", size, box.tolist(), bound)

    found: List[IntVector] = []
    for vectors, values in _visit(spec, box):
        found.extend(_within_bound(spec, vectors, values, bound))
    return sorted(found, key=canonical_key)


def _within_bound(spec: GaugeSpec, vectors: np.ndarray, values: np.ndarray, bound: float) -> List[IntVector]:
    if not isinstance(spec, EllipsoidGauge) or spec.exact_gram is None:
        return [tuple(int(x) for x in row) for row in vectors[values <= bound]]
    # rational Gram matrices are compared exactly, rounding only preselects
    square = Fraction(bound) ** 2
    preselected = vectors[values <= bound * (1.0 + BOX_SLACK)]
    return [v for v in (tuple(int(x) for x in row) for row in preselected) if spec.exact_square(v) <= square]


def _exact_minimizers(spec: GaugeSpec, candidates: List[IntVector]) -> List[IntVector]:
    if not isinstance(spec, EllipsoidGauge) or spec.exact_gram is None:
        return candidates
    squares: Dict[IntVector, Fraction] = {v: spec.exact_square(v) for v in candidates}  # type: ignore
    smallest = min(squares.values())
    return [v for v in candidates if squares[v] == smallest]


def systole(spec: GaugeSpec) -> SystoleResult:
    """
    Compute sys(f) = min{f(v) | v in Z^n, v != 0} and its canonical minimizer.

    The initial incumbent is s_0 = min_k f(e_k). Ties are decided in exact arithmetic for rational Gram matrices.

    Args:
        spec: The norm

    Raises:
        DimensionError for dimension 0.
        PreconditionError if the dual gauge of a coordinate covector is not finite.
        EnumerationLimitError if the initial box holds more points than enumeration_cap().

    Returns:
        A SystoleResult.
    """
    if spec.dimension < 1:
        raise DimensionError("The systole of a gauge of dimension 0 is undefined.")
    duals = _coordinate_duals(spec)
    basis_values = spec.evaluate(np.eye(spec.dimension))
    best = float(np.min(basis_values))
    box = _box(duals, best)
    size = _box_size(box)
    cap = enumeration_cap()
    if size > cap:
        raise EnumerationLimitError(size, cap)
    logger.debug("Systole search over %d box points %s, incumbent %r", size, box.tolist(), best)

    candidates: Dict[IntVector, float] = {}
    incumbent = [best]

    def shrink() -> np.ndarray:
        return _box(duals, incumbent[0])

    for vectors, values in _visit(spec, box, shrink):
        chunk_best = float(np.min(values))
        if chunk_best < incumbent[0] * (1.0 - TIE_TOLERANCE):
            logger.debug("New systole incumbent %r", chunk_best)
        incumbent[0] = min(incumbent[0], chunk_best)
        threshold = incumbent[0] * (1.0 + TIE_TOLERANCE)
        for row, value in zip(vectors[values <= threshold], values[values <= threshold]):
            candidates[tuple(int(x) for x in row)] = float(value)
        candidates = {v: value for v, value in candidates.items() if value <= threshold}

    minimizers = sorted(_exact_minimizers(spec, list(candidates)), key=canonical_key)
    u = minimizers[0]
    if not spec.exact:
        logger.warning("Systole of the %s gauge relies on approximate dual values", spec.family.value)
    return SystoleResult(
        s=float(spec.evaluate(np.array([u], dtype=np.float64))[0]),
        u=u,
        exhaustive=spec.exact,
        minimizers=tuple(minimizers),
    )


def extended_gcd(a: int, b: int) -> Tuple[int, int, int]:
    """
    Returns (g, x, y) with a x + b y = g = gcd(a, b) >= 0
    """
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        quotient = old_r // r
        old_r, r = r, old_r - quotient * r
        old_x, x = x, old_x - quotient * x
        old_y, y = y, old_y - quotient * y
    if old_r < 0:
        return -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def unimodular_complete(u: Sequence[int]) -> UnimodularMatrix:
    """
    Complete a primitive vector u to a matrix A in SL(n, Z) with A e_1 = u.

    The entries of u are folded into the first coordinate one by one with extended gcd steps; the inverse steps
    accumulate into A. If the determinant comes out as -1 the last column is negated.

    Args:
        u: A nonzero integer vector with coprime entries

    Raises:
        PreconditionError if u is zero or its entries are not coprime.

    Returns:
        The UnimodularMatrix A.
    """
    vector = [int(x) for x in u]
    dimension = len(vector)
    if dimension == 0:
        raise DimensionError("Cannot complete an empty vector.")
    divisor = reduce(math.gcd, vector, 0)
    if divisor != 1:
        raise PreconditionError(f"The entries of {tuple(vector)} are not coprime (gcd {divisor}).")
    if dimension == 1 and vector[0] == -1:
        raise PreconditionError("No matrix in SL(1, Z) maps e_1 to -e_1.")

    matrix = [[int(i == j) for j in range(dimension)] for i in range(dimension)]
    reduced = list(vector)
    for j in range(dimension - 1, 0, -1):
        a, b = reduced[0], reduced[j]
        if b == 0:
            continue
        g, x, _ = extended_gcd(a, b)
        step = abs(b // g)
        x %= step
        y = (g - x * a) // b
        # (a, b) -> (g, 0) by [[x, y], [-b/g, a/g]]; A absorbs the inverse [[a/g, -y], [b/g, x]]
        for row in matrix:
            first, other = row[0], row[j]
            row[0] = first * (a // g) + other * (b // g)
            row[j] = -first * y + other * x
        reduced[0], reduced[j] = g, 0
    if reduced[0] == -1:
        for row in matrix:
            row[0] = -row[0]
    if sympy.Matrix(matrix).det() == -1:
        for row in matrix:
            row[-1] = -row[-1]
    result = UnimodularMatrix(matrix)
    if result.column(0) != tuple(vector):
        raise PreconditionError(f"Completion of {tuple(vector)} failed: first column {result.column(0)}.")
    return result


def pullback_gauge(spec: GaugeSpec, matrix: Union[UnimodularMatrix, Sequence[Sequence[int]]]) -> GaugeSpec:
    """
    The gauge f_A = f o A. Ellipsoids and polytopes stay in their family (Gram matrix A^T Q A, vertices A^-1 v_i,
    normals a_i A); other families are wrapped in a PullbackGauge.

    Args:
        spec: The norm f
        matrix: An invertible integer matrix A, usually unimodular

    Returns:
        The gauge of f o A.
    """
    if not isinstance(matrix, UnimodularMatrix):
        for row in matrix:
            for value in row:
                if isinstance(value, bool) or not float(value).is_integer():
                    raise PreconditionError(f"Pullback matrix entries must be integers, got {value!r}.")
        exact = sympy.Matrix([[int(x) for x in row] for row in matrix])
        if exact.shape != (spec.dimension, spec.dimension):
            raise DimensionError(f"Expected a {spec.dimension}x{spec.dimension} matrix, got shape {exact.shape}.")
        if exact.det() == 0:
            raise PreconditionError("The pullback matrix is singular.")
        forward = np.array(exact.tolist(), dtype=np.float64)
        inverse = np.array(exact.inv().evalf().tolist(), dtype=np.float64)
        rational_rows = exact.tolist()
    else:
        if matrix.dimension != spec.dimension:
            raise DimensionError(f"Expected a {spec.dimension}x{spec.dimension} matrix, got {matrix.dimension}.")
        forward = matrix.array.astype(np.float64)
        inverse = matrix.inverse().array.astype(np.float64)
        rational_rows = matrix.to_python()

    if isinstance(spec, EllipsoidGauge):
        if spec.exact_gram is not None:
            product = sympy.Matrix(rational_rows).T * sympy.Matrix(spec.exact_gram) * sympy.Matrix(rational_rows)
            return EllipsoidGauge(
                [[Fraction(int(x.p), int(x.q)) for x in product.row(i)] for i in range(spec.dimension)]
            )
        return EllipsoidGauge(forward.T @ spec.gram @ forward)
    if isinstance(spec, PolytopeVGauge):
        return PolytopeVGauge(spec.vertices @ inverse.T)
    if isinstance(spec, PolytopeHGauge):
        return PolytopeHGauge(spec.normals @ forward, spec.offsets)
    if isinstance(spec, PullbackGauge):
        return PullbackGauge(spec.base, spec.matrix @ forward, inverse @ spec.inverse)
    return PullbackGauge(spec, forward, inverse)


def reduce_norm(spec: GaugeSpec) -> ReducedNorm:
    """
    Change the lattice basis so that the first basis vector realises the systole: A = unimodular_complete(u) and
    f_A = f o A, hence f_A(e_1) = s.
    """
    result = systole(spec)
    basis = unimodular_complete(result.u)
    if basis.is_identity():
        return ReducedNorm(spec, basis, result.s)
    return ReducedNorm(pullback_gauge(spec, basis), basis, result.s)


def random_unimodular(dimension: int, word_length: int, seed: int) -> UnimodularMatrix:
    """
    A random word in the generators of SL(n, Z): S = [[0, -1], [1, 0]] and T = [[1, 1], [0, 1]] (and inverses) for
    n = 2, elementary transvections I +- E_ij otherwise.

    Args:
        dimension: The size n
        word_length: The number of generators multiplied together
        seed: Seed of the random generator

    Returns:
        The product as a UnimodularMatrix.
    """
    if dimension < 1:
        raise DimensionError(f"Dimension should be positive, got {dimension}.")
    rng = np.random.default_rng(seed)
    if dimension == 2:
        generators = [
            np.array([[0, -1], [1, 0]]),
            np.array([[0, 1], [-1, 0]]),
            np.array([[1, 1], [0, 1]]),
            np.array([[1, -1], [0, 1]]),
        ]
    else:
        generators = []
        for i, j in itertools.permutations(range(dimension), 2):
            for sign in (1, -1):
                transvection = np.eye(dimension, dtype=np.int64)
                transvection[i, j] = sign
                generators.append(transvection)
    product = np.eye(dimension, dtype=object)
    if generators:
        for index in rng.integers(0, len(generators), size=word_length):
            product = product.dot(generators[int(index)].astype(object))
    return UnimodularMatrix(product.tolist())
