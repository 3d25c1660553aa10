"""Calculus of linear relations on V = C^n.

A linear relation is any linear subspace of V (+) V; it generalizes the graph
of an operator to multivalued or partially defined maps. We store a relation
as an orthonormal basis of the subspace: a (2n, d) array whose first n rows
hold the x1-component and last n rows the x2-component of each basis pair
(x1, x2).

Conventions used throughout:

* J(x1, x2) = (x2, -x1); the adjoint relation is J applied to the orthogonal
  complement.
* A relation is symmetric when contained in its adjoint, self-adjoint when
  equal to it; a self-adjoint relation always has dimension n.
* ``lambda_ab(A, B)`` is the relation {(x1, x2) : A x1 = B x2}, which is
  self-adjoint exactly when A B* is Hermitian and (A|B) has full row rank
  (that criterion is implemented in :mod:`kreinbc.boundary`).

Subset and equality tests compare subspaces through the *sine* of the largest
principal angle (the spectral norm of the residual after projection). Working
with sines rather than cosines keeps angles near 1e-9 resolvable in double
precision.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import matops
from .errors import DimensionMismatch, NotAGraph, Singular

# Largest admissible sine of a principal angle in subset/equality tests; one
# order looser than the construction error of the bases.
SUBSPACE_TOL = 1e-9

# Absolute singular-value cutoff for null spaces of stacked projectors
# (intersection machinery); the projector entries are O(1) by construction.
INTERSECT_CUT = 1e-10


@dataclass(frozen=True)
class LinearRelation:
    """Subspace of C^n (+) C^n given by an orthonormal basis of pair columns."""

    n: int
    basis: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("relation dimension n must be >= 1")
        b = matops.as_complex_matrix(self.basis)
        if b.shape[0] != 2 * self.n or b.shape[1] > 2 * self.n:
            raise ValueError(f"basis shape {b.shape} invalid for n={self.n}")
        d = b.shape[1]
        if d and np.linalg.norm(b.conj().T @ b - np.eye(d), 2) > 1e-10:
            raise ValueError("basis columns are not orthonormal")
        b = b.copy()
        b.setflags(write=False)
        object.__setattr__(self, "basis", b)

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    # -- projections ------------------------------------------------------

    def domain(self) -> np.ndarray:
        """Orthonormal basis of dom = {x : (x, y) in the relation for some y}."""
        return matops.orthonormal_columns(self.basis[: self.n, :])

    def _projector(self) -> np.ndarray:
        return self.basis @ self.basis.conj().T

    # -- algebra ----------------------------------------------------------

    def inverse(self) -> "LinearRelation":
        """Swap the two components: {(x, y) : (y, x) in the relation}."""
        n = self.n
        return LinearRelation(n, np.vstack([self.basis[n:, :], self.basis[:n, :]]))

    def scale(self, alpha: complex) -> "LinearRelation":
        """{(x, alpha*y) : (x, y) in the relation}."""
        n = self.n
        scaled = np.vstack([self.basis[:n, :], alpha * self.basis[n:, :]])
        return LinearRelation(n, matops.orthonormal_columns(scaled))

    def add(self, other: "LinearRelation") -> "LinearRelation":
        """Sum of relations: {(x, y' + y'')} over shared x.

        The domain of the result is the intersection of the two domains.
        Computed from the null space of stacked complement projectors on
        triples (x, y', y''), then mapped through (x, y', y'') -> (x, y'+y'').
        """
        if not isinstance(other, LinearRelation):
            return NotImplemented
        if other.n != self.n:
            raise DimensionMismatch(f"relations on C^{self.n} and C^{other.n}")
        n = self.n
        eye2n = np.eye(2 * n, dtype=np.complex128)
        c1 = eye2n - self._projector()
        c2 = eye2n - other._projector()
        # Rows constrain (x, y') in self and (x, y'') in other.
        m = np.zeros((4 * n, 3 * n), dtype=np.complex128)
        m[: 2 * n, :n] = c1[:, :n]
        m[: 2 * n, n : 2 * n] = c1[:, n:]
        m[2 * n :, :n] = c2[:, :n]
        m[2 * n :, 2 * n :] = c2[:, n:]
        triples = matops.nullspace(m, INTERSECT_CUT)
        summed = np.vstack([triples[:n, :], triples[n : 2 * n, :] + triples[2 * n :, :]])
        return LinearRelation(n, matops.orthonormal_columns(summed))

    __add__ = add

    def adjoint(self) -> "LinearRelation":
        """J applied to the orthogonal complement, J(x1, x2) = (x2, -x1)."""
        n = self.n
        if self.dim == 0:
            comp = np.eye(2 * n, dtype=np.complex128)
        else:
            u, _, _ = np.linalg.svd(self.basis, full_matrices=True)
            comp = u[:, self.dim :]
        flipped = np.vstack([comp[n:, :], -comp[:n, :]])
        return LinearRelation(n, flipped)

    # -- comparisons ------------------------------------------------------

    def subset_of(self, other: "LinearRelation", tol: float = SUBSPACE_TOL) -> bool:
        """Containment up to ``tol`` on the sine of the largest principal angle."""
        if other.n != self.n:
            raise DimensionMismatch(f"relations on C^{self.n} and C^{other.n}")
        if self.dim == 0:
            return True
        if other.dim == 0:
            return False
        residual = self.basis - other.basis @ (other.basis.conj().T @ self.basis)
        return np.linalg.norm(residual, 2) <= tol

    def equals(self, other: "LinearRelation", tol: float = SUBSPACE_TOL) -> bool:
        """Same subspace: equal dimensions and mutual containment."""
        return (
            self.dim == other.dim
            and self.subset_of(other, tol)
            and other.subset_of(self, tol)
        )

    def is_symmetric(self) -> bool:
        return self.subset_of(self.adjoint())

    def is_selfadjoint(self) -> bool:
        return self.dim == self.n and self.equals(self.adjoint())


def from_spanning_pairs(n: int, pairs) -> LinearRelation:
    """Relation spanned by the given (x1, x2) pairs (orthonormalized)."""
    cols = []
    for x1, x2 in pairs:
        v1 = matops.as_complex_vector(x1)
        v2 = matops.as_complex_vector(x2)
        if v1.size != n or v2.size != n:
            raise DimensionMismatch(
                f"pair components of lengths {v1.size}, {v2.size}; expected {n}"
            )
        cols.append(np.concatenate([v1, v2]))
    if not cols:
        return LinearRelation(n, np.zeros((2 * n, 0), dtype=np.complex128))
    stacked = np.column_stack(cols)
    return LinearRelation(n, matops.orthonormal_columns(stacked))


def graph(op) -> LinearRelation:
    """Graph of the operator with matrix ``op``: pairs (x, op @ x)."""
    op = matops.as_complex_matrix(op)
    if op.shape[0] != op.shape[1]:
        raise DimensionMismatch(f"operator matrix must be square, got {op.shape}")
    n = op.shape[0]
    stacked = np.vstack([np.eye(n, dtype=np.complex128), op])
    return LinearRelation(n, matops.orthonormal_columns(stacked))


def lambda_ab(a, b) -> LinearRelation:
    """The relation {(x1, x2) : A x1 = B x2} as the null space of (A | -B)."""
    a = matops.as_complex_matrix(a)
    b = matops.as_complex_matrix(b)
    if a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"need square A, B of equal size, got {a.shape}, {b.shape}")
    n = a.shape[0]
    block = np.hstack([a, -b])
    _, sv, vh = np.linalg.svd(block, full_matrices=True)
    cutoff = matops.RANK_RTOL * sv[0] * max(block.shape) if sv.size and sv[0] > 0 else 0.0
    nnz = int(np.count_nonzero(sv > cutoff))
    return LinearRelation(n, vh[nnz:].conj().T)


def invert_shifted_graph(q, rel: LinearRelation) -> np.ndarray:
    """Invert gr(Q) - rel and return the matrix of the resulting operator.

    For a self-adjoint ``rel`` and z in the joint resolvent set the relation
    (gr Q - rel)^{-1} is the graph of an everywhere-defined operator C; this
    returns C. ``NotAGraph`` signals that the inverse has a defective domain,
    i.e. the spectral parameter sits outside the joint resolvent set.
    """
    q = matops.as_complex_matrix(q)
    n = rel.n
    if q.shape != (n, n):
        raise DimensionMismatch(f"Q must be {n}x{n}, got {q.shape}")
    shifted = graph(q).add(rel.scale(-1.0))
    inv = shifted.inverse()
    if inv.dim != n:
        raise NotAGraph(f"inverse relation has dimension {inv.dim}, expected {n}")
    u = inv.basis[:n, :]
    sv = matops.singular_values(u)
    if sv.size < n or sv[-1] <= INTERSECT_CUT:
        raise NotAGraph("inverse relation is not everywhere defined")
    w = inv.basis[n:, :]
    try:
        return matops.solve(u.T, w.T).T
    except Singular as exc:  # pragma: no cover - guarded by the sv check
        raise NotAGraph("domain block numerically singular") from exc
