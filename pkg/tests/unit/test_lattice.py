# SPDX-FileCopyrightText: 2022 Contributors to the Systocap project
#
# SPDX-License-Identifier: MPL-2.0

import itertools
import math
from fractions import Fraction
from functools import reduce

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from systocap.errors import DimensionError, EnumerationLimitError, PreconditionError
from systocap.lattice import (
    UnimodularMatrix,
    canonical_key,
    enumerate_short_vectors,
    enumeration_cap,
    extended_gcd,
    pullback_gauge,
    random_unimodular,
    reduce_norm,
    sign_normalize,
    systole,
    unimodular_complete,
)
from systocap.norm import (
    EllipsoidGauge,
    LpGauge,
    OracleGauge,
    PolytopeHGauge,
    PolytopeVGauge,
    PullbackGauge,
    gauge,
    gauge_many,
)

from .utils import euclidean_norm

HEXAGON = [[1, 0], [-1, 0], [0, 1], [0, -1], [1, 1], [-1, -1]]


def brute_force_systole(gram: np.ndarray, bound: int = 10):
    dimension = gram.shape[0]
    best_value, best = math.inf, []
    for vector in itertools.product(range(-bound, bound + 1), repeat=dimension):
        if not any(vector):
            continue
        value = math.sqrt(sum(gram[i, j] * vector[i] * vector[j] for i in range(dimension) for j in range(dimension)))
        if value < best_value * (1.0 - 1e-12):
            best_value, best = value, [vector]
        elif value <= best_value * (1.0 + 1e-12):
            best.append(vector)
    normalized = set()
    for vector in best:
        first = next(x for x in vector if x != 0)
        normalized.add(vector if first > 0 else tuple(-x for x in vector))
    return best_value, min(normalized, key=lambda v: [(abs(x), x < 0) for x in v])


def test_canonical_key():
    vectors = [(1, -1), (2, 0), (0, 1), (1, 1)]
    assert sorted(vectors, key=canonical_key) == [(0, 1), (1, 1), (1, -1), (2, 0)]
    assert sign_normalize((0, -2, 1)) == (0, 2, -1)
    assert sign_normalize((0, 0)) == (0, 0)
    assert sign_normalize((3, -1)) == (3, -1)


def test_systole_examples():
    result = systole(LpGauge(2, 1))
    assert result.s == 1.0
    assert result.u == (0, 1)
    assert result.minimizers == ((0, 1), (1, 0))
    assert result.exhaustive

    result = systole(EllipsoidGauge([[5, 3], [3, 2]]))
    assert result.s == pytest.approx(1.0, rel=1e-12)
    assert result.u == (1, -1)
    assert result.minimizers == ((1, -1), (1, -2))

    result = systole(LpGauge(3, 2))
    assert result.s == 1.0
    assert result.u == (0, 0, 1)

    result = systole(EllipsoidGauge([[4, 0], [0, 9]]))
    assert result.s == 2.0
    assert result.u == (1, 0)


def test_systole_exact_tie_break():
    # (1, 0) and (0, 1) tie in exact arithmetic although the float values may differ in the last bit
    spec = EllipsoidGauge([[Fraction(1, 3), 0], [0, Fraction(1, 3)]])
    result = systole(spec)
    assert result.u == (0, 1)
    assert len(result.minimizers) == 2


def test_systole_other_families():
    assert systole(PolytopeVGauge(HEXAGON)).s == pytest.approx(1.0, rel=1e-12)
    assert systole(PolytopeHGauge(HEXAGON, [1, 1, 1, 1, 2, 2])).s == pytest.approx(1.0, rel=1e-9)
    assert systole(LpGauge(2, math.inf, weight=2.0)).s == 2.0

    result = systole(OracleGauge(2, euclidean_norm))
    assert result.s == pytest.approx(1.0)
    assert result.u == (0, 1)
    assert not result.exhaustive


def test_enumerate_short_vectors():
    assert enumerate_short_vectors(LpGauge(2, 2), 1.0) == [(0, 1), (1, 0)]
    assert enumerate_short_vectors(LpGauge(2, 1), 2.0) == [(0, 1), (0, 2), (1, 0), (1, 1), (1, -1), (2, 0)]
    assert enumerate_short_vectors(EllipsoidGauge([[4, 0], [0, 9]]), 1.9) == []
    assert len(enumerate_short_vectors(LpGauge(3, math.inf), 1.0)) == 13


@pytest.mark.parametrize(
    ("spec", "minimizers"),
    [
        pytest.param(LpGauge(2, 2), [(0, 1), (1, 0)], id="l2"),
        pytest.param(LpGauge(3, 1), [(0, 0, 1), (0, 1, 0), (1, 0, 0)], id="l1-n3"),
        pytest.param(EllipsoidGauge([[5, 3], [3, 2]]), [(1, -1), (1, -2)], id="ellipsoid"),
        pytest.param(EllipsoidGauge([[Fraction(1, 4), 0], [0, Fraction(1, 4)]]), [(0, 1), (1, 0)], id="quarter"),
    ],
)
def test_enumerate_short_vectors_at_tied_bound(spec, minimizers):
    s = systole(spec).s
    assert enumerate_short_vectors(spec, s) == minimizers
    assert all(gauge(spec, v) <= s for v in minimizers)
    assert enumerate_short_vectors(spec, s * (1.0 - 1e-12)) == []


def test_enumerate_short_vectors_errors(monkeypatch):
    with pytest.raises(PreconditionError):
        enumerate_short_vectors(LpGauge(2, 1), 0.0)
    with pytest.raises(PreconditionError):
        enumerate_short_vectors(LpGauge(2, 1), math.inf)

    monkeypatch.setenv("SYSTOCAP_ENUM_CAP", "10")
    assert enumeration_cap() == 10
    with pytest.raises(EnumerationLimitError, match="SYSTOCAP_ENUM_CAP") as exc_info:
        enumerate_short_vectors(LpGauge(2, 1), 5.0)
    assert exc_info.value.box_size == 121
    assert exc_info.value.cap == 10

    monkeypatch.setenv("SYSTOCAP_ENUM_CAP", "many")
    with pytest.raises(PreconditionError):
        enumeration_cap()
    monkeypatch.setenv("SYSTOCAP_ENUM_CAP", "0")
    with pytest.raises(PreconditionError):
        enumeration_cap()
    monkeypatch.delenv("SYSTOCAP_ENUM_CAP")
    assert enumeration_cap() == 10**9


def test_systole_matches_brute_force():
    rng = np.random.default_rng(2022)
    for index in range(50):
        dimension = 2 + index % 2
        factor = rng.standard_normal((dimension, dimension))
        gram = factor.T @ factor + 0.5 * np.eye(dimension)
        expected_s, expected_u = brute_force_systole(gram)
        result = systole(EllipsoidGauge(gram))
        assert result.u == expected_u
        assert result.s == pytest.approx(expected_s, rel=1e-12)


def test_extended_gcd():
    assert extended_gcd(2, 3) == (1, -1, 1)
    g, x, y = extended_gcd(-12, 18)
    assert g == 6
    assert -12 * x + 18 * y == 6
    assert extended_gcd(0, 0) == (0, 1, 0)


def test_unimodular_complete():
    assert unimodular_complete((1, 0)) == UnimodularMatrix.identity(2)
    assert unimodular_complete((2, 3)).to_python() == [[2, 1], [3, 2]]
    assert unimodular_complete((1,)).to_python() == [[1]]

    matrix = unimodular_complete((6, 10, 15))
    assert matrix.column(0) == (6, 10, 15)

    with pytest.raises(PreconditionError, match="not coprime"):
        unimodular_complete((2, 4))
    with pytest.raises(PreconditionError, match="not coprime"):
        unimodular_complete((0, 0))
    with pytest.raises(PreconditionError):
        unimodular_complete((-1,))
    with pytest.raises(DimensionError):
        unimodular_complete(())


@settings(max_examples=300, derandomize=True)
@given(vector=st.lists(st.integers(min_value=-60, max_value=60), min_size=1, max_size=4))
def test_unimodular_complete_property(vector):
    assume(reduce(math.gcd, vector, 0) == 1)
    assume(vector != [-1])
    # the constructor checks det = +1 in exact arithmetic
    matrix = unimodular_complete(vector)
    assert matrix.column(0) == tuple(vector)
    assert (matrix @ matrix.inverse()).is_identity()


def test_unimodular_matrix():
    matrix = UnimodularMatrix([[2, 1], [3, 2]])
    assert matrix.dimension == 2
    assert matrix.inverse().to_python() == [[2, -1], [-3, 2]]
    assert matrix.inverse().inverse() is matrix
    assert (matrix @ matrix.inverse()).is_identity()
    assert not matrix.is_identity()
    assert matrix == UnimodularMatrix([[2.0, 1.0], [3.0, 2.0]])
    assert len({matrix, UnimodularMatrix([[2, 1], [3, 2]])}) == 1
    np.testing.assert_array_equal(matrix.array, [[2, 1], [3, 2]])
    assert repr(matrix) == "UnimodularMatrix([[2, 1], [3, 2]])"

    with pytest.raises(PreconditionError, match="determinant -1"):
        UnimodularMatrix([[0, 1], [1, 0]])
    with pytest.raises(PreconditionError, match="integers"):
        UnimodularMatrix([[1, 0.5], [0, 1]])
    with pytest.raises(DimensionError):
        UnimodularMatrix([[1, 0, 0], [0, 1, 0]])
    with pytest.raises(DimensionError):
        UnimodularMatrix([])


def test_random_unimodular():
    for dimension in (1, 2, 3):
        matrix = random_unimodular(dimension, word_length=10, seed=dimension)
        assert matrix.dimension == dimension
    assert random_unimodular(2, 10, seed=4) == random_unimodular(2, 10, seed=4)
    assert random_unimodular(3, 0, seed=4).is_identity()
    with pytest.raises(DimensionError):
        random_unimodular(0, 3, seed=1)


def test_pullback_gauge():
    matrix = UnimodularMatrix([[2, 1], [3, 2]])
    rng = np.random.default_rng(6)
    vectors = rng.standard_normal((100, 2))
    images = vectors @ matrix.array.T.astype(float)

    ellipsoid = EllipsoidGauge([[5, 3], [3, 2]])
    pulled = pullback_gauge(ellipsoid, matrix)
    assert isinstance(pulled, EllipsoidGauge)
    assert pulled.exact_gram is not None
    np.testing.assert_allclose(gauge_many(pulled, vectors), gauge_many(ellipsoid, images), rtol=1e-12)

    for spec in (PolytopeVGauge(HEXAGON), PolytopeHGauge(HEXAGON, [1] * 6), LpGauge(2, 3)):
        pulled = pullback_gauge(spec, matrix)
        assert type(pulled) is (type(spec) if not isinstance(spec, LpGauge) else PullbackGauge)
        np.testing.assert_allclose(gauge_many(pulled, vectors), gauge_many(spec, images), rtol=1e-9)

    # pullbacks compose: (f o A) o B = f o (A B)
    other = UnimodularMatrix([[1, 1], [0, 1]])
    twice = pullback_gauge(pullback_gauge(LpGauge(2, 3), matrix), other)
    once = pullback_gauge(LpGauge(2, 3), matrix @ other)
    np.testing.assert_allclose(gauge_many(twice, vectors), gauge_many(once, vectors), rtol=1e-12)

    # plain integer matrices are accepted as long as they are invertible
    scaled = pullback_gauge(LpGauge(2, 1), [[2, 0], [0, 1]])
    assert gauge(scaled, [1, 1]) == 3.0
    with pytest.raises(PreconditionError):
        pullback_gauge(LpGauge(2, 1), [[1, 1], [1, 1]])
    with pytest.raises(PreconditionError, match="must be integers"):
        pullback_gauge(LpGauge(2, 1), [[1.5, 0], [0, 1]])
    with pytest.raises(PreconditionError, match="must be integers"):
        pullback_gauge(EllipsoidGauge([[2, 0], [0, 1]]), [[1, 0.25], [0, 1]])
    with pytest.raises(DimensionError):
        pullback_gauge(LpGauge(2, 1), UnimodularMatrix.identity(3))


def test_reduce_norm():
    spec = EllipsoidGauge([[5, 3], [3, 2]])
    reduced = reduce_norm(spec)
    assert reduced.basis.column(0) == (1, -1)
    assert reduced.systole == pytest.approx(1.0)
    assert reduced.spec.exact_gram[0][0] == 1
    assert gauge(reduced.spec, [1, 0]) == pytest.approx(1.0, rel=1e-12)

    reduced = reduce_norm(LpGauge(2, 2))
    assert gauge(reduced.spec, [1, 0]) == 1.0

    spec = EllipsoidGauge([[4, 0], [0, 9]])
    reduced = reduce_norm(spec)
    assert reduced.basis.is_identity()
    assert reduced.spec is spec


@pytest.mark.parametrize(
    "spec",
    [
        pytest.param(EllipsoidGauge([[5, 3], [3, 2]]), id="ellipsoid"),
        pytest.param(LpGauge(2, 1.5), id="l1.5"),
        pytest.param(PolytopeVGauge(HEXAGON), id="polytope-v"),
    ],
)
def test_systole_is_unimodular_invariant(spec):
    expected = systole(spec).s
    rng = np.random.default_rng(17)
    for seed in range(100):
        matrix = random_unimodular(2, word_length=int(rng.integers(1, 11)), seed=seed)
        assert systole(pullback_gauge(spec, matrix)).s == pytest.approx(expected, rel=1e-12)
