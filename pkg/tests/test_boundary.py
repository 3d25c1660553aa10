"""Tests of boundary-pair validation and the unitary parametrization."""

import numpy as np
import pytest

from kreinbc import boundary, linrel, matops
from kreinbc.errors import (
    DimensionMismatch,
    NotDisjoint,
    NotSelfAdjointCondition,
    NotUnitary,
    RankDeficient,
)

from helpers import haar_like_unitary, random_invertible, random_valid_pair


def delta_coupling(n, theta):
    """Continuity across the vertex plus a total-flux condition of strength theta."""
    a = np.zeros((n, n), dtype=complex)
    a[n - 1, :] = -1.0
    b = np.zeros((n, n), dtype=complex)
    for row in range(n - 1):
        b[row, row] = 1.0
        b[row, row + 1] = -1.0
    b[n - 1, 0] = theta
    return a, b


def test_validate_reference_extension():
    pair = boundary.validate(np.eye(2), np.zeros((2, 2)))
    assert pair.validated and pair.n == 2


def test_validate_rejects_skew_pair():
    with pytest.raises(NotSelfAdjointCondition):
        boundary.validate(np.eye(2), 1j * np.eye(2))


def test_validate_rejects_rank_deficient():
    with pytest.raises(RankDeficient):
        boundary.validate(np.zeros((2, 2)), np.zeros((2, 2)))


def test_validate_rejects_shape_mismatch():
    with pytest.raises(DimensionMismatch):
        boundary.validate(np.eye(2), np.eye(3))


def test_validate_delta_coupling():
    theta = 0.7
    a, b = delta_coupling(3, theta)
    ab_star = a @ b.conj().T
    expect = np.zeros((3, 3))
    expect[2, 2] = -theta
    assert np.abs(ab_star - expect).max() <= 1e-14
    pair = boundary.validate(a, b)
    assert matops.rank(np.hstack([pair.A, pair.B])) == 3


def test_kernel_intersection_trivial():
    pair = boundary.validate(np.eye(2), np.zeros((2, 2)))
    assert boundary.kernel_intersection_trivial(pair)
    rng = np.random.default_rng(41)
    for n in (1, 3):
        assert boundary.kernel_intersection_trivial(random_valid_pair(rng, n))
    raw = boundary.BoundaryPair(2, np.zeros((2, 2)), np.zeros((2, 2)), validated=False)
    assert not boundary.kernel_intersection_trivial(raw)


def test_canonical_range_form_examples():
    h0 = boundary.validate(np.eye(2), np.zeros((2, 2)))
    rel = boundary.canonical_range_form(h0)
    assert rel.equals(linrel.lambda_ab(np.eye(2), np.zeros((2, 2))))
    ident = boundary.validate(np.eye(2), np.eye(2))
    assert boundary.canonical_range_form(ident).equals(linrel.graph(np.eye(2)))


def test_canonical_range_form_random_pairs():
    rng = np.random.default_rng(42)
    for n in (1, 2, 4):
        pair = random_valid_pair(rng, n)
        assert boundary.canonical_range_form(pair).equals(pair.relation())


def test_to_unitary_scalar_cases():
    h0 = boundary.validate([[1.0]], [[0.0]])
    assert np.abs(boundary.to_unitary(h0) - 1.0).max() <= 1e-12
    neumann_free = boundary.validate([[0.0]], [[1.0]])
    assert np.abs(boundary.to_unitary(neumann_free) + 1.0).max() <= 1e-12


def test_unitary_roundtrips():
    rng = np.random.default_rng(43)
    for n in (1, 2, 3, 5):
        u = haar_like_unitary(rng, n)
        pair = boundary.from_unitary(u)
        assert np.abs(boundary.to_unitary(pair) - u).max() <= 1e-9
        # roundtrip through a mixed representative of the same relation
        m = random_invertible(rng, n)
        mixed = boundary.validate(m @ pair.A, m @ pair.B)
        u2 = boundary.to_unitary(mixed)
        rebuilt = boundary.from_unitary(u2)
        assert rebuilt.relation().equals(pair.relation())


def test_from_unitary_extremes():
    h0 = boundary.from_unitary(np.eye(2))
    assert np.abs(h0.A - 2j * np.eye(2)).max() <= 1e-14
    assert np.abs(h0.B).max() <= 1e-14
    full = boundary.from_unitary(-np.eye(2))
    assert np.abs(full.A).max() <= 1e-14
    assert np.abs(full.B - 2.0 * np.eye(2)).max() <= 1e-14


def test_from_unitary_rejects_non_unitary():
    with pytest.raises(NotUnitary):
        boundary.from_unitary(np.diag([1.0, 2.0]))


def test_disjoint_operator_examples():
    alpha = -1.3
    pair = boundary.validate(alpha * np.eye(2), np.eye(2))
    assert np.abs(boundary.disjoint_operator(pair) - alpha * np.eye(2)).max() <= 1e-12
    h0 = boundary.validate(np.eye(2), np.zeros((2, 2)))
    with pytest.raises(NotDisjoint):
        boundary.disjoint_operator(h0)


def test_disjoint_operator_is_selfadjoint():
    rng = np.random.default_rng(44)
    found = 0
    while found < 5:
        pair = random_valid_pair(rng, 3)
        if matops.rank(pair.B) < 3:
            continue
        op = boundary.disjoint_operator(pair)
        assert np.linalg.norm(op - op.conj().T, 2) <= 1e-9 * (1 + np.linalg.norm(op, 2))
        found += 1


def test_left_multiplication_invariance():
    rng = np.random.default_rng(45)
    for n in (2, 4):
        pair = random_valid_pair(rng, n, mix=False)
        m = random_invertible(rng, n)
        mixed = boundary.validate(m @ pair.A, m @ pair.B)
        assert mixed.relation().equals(pair.relation())


def test_validation_tolerance_is_scale_invariant():
    rng = np.random.default_rng(46)
    pair = random_valid_pair(rng, 3, mix=False)
    boundary.validate(1e6 * pair.A, 1e6 * pair.B)
    boundary.validate(1e-6 * pair.A, 1e-6 * pair.B)


def test_pair_matrices_are_stored_verbatim():
    a = np.array([[0.0, 2.0], [0.0, 0.0]]) + np.array([[0.0, 0.0], [2.0, 0.0]])
    a = a.astype(complex)
    pair = boundary.validate(a, np.eye(2))
    assert np.array_equal(pair.A, a)
    with pytest.raises(ValueError):
        pair.A[0, 0] = 5.0  # stored matrices are read-only
