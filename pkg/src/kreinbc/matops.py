"""Dense complex linear algebra primitives for small matrices.

Everything in this package works on plain 2-D ``numpy.ndarray`` values of
dtype complex128 (the supported regime is n up to a few dozen). The helpers
here add the input validation and the tolerance conventions the rest of the
package relies on; the heavy lifting is LAPACK via numpy/scipy.
"""

from __future__ import annotations

import warnings

import numpy as np
from scipy.linalg import LinAlgWarning, lu_factor, lu_solve

from .errors import NonSquare, Singular

# Pivot threshold for declaring a solve singular, relative to the inf-norm of
# the matrix. Cheap in-loop test; callers that need a sharper criterion
# re-check with singular_values().
PIVOT_RTOL = 1e-13

# Default numerical-rank cutoff: RANK_RTOL * sigma_max * max(rows, cols).
RANK_RTOL = 1e-12

# Columns whose residual after orthogonalization falls below this fraction of
# the largest input column norm are treated as dependent and dropped.
DEPENDENT_COL_RTOL = 1e-12


def as_complex_matrix(a) -> np.ndarray:
    """Coerce ``a`` to a 2-D complex128 array with all entries finite."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got ndim={m.ndim}")
    if m.size and not np.isfinite(m).all():
        raise ValueError("matrix entries must be finite")
    return m


def as_complex_vector(a, n: int | None = None) -> np.ndarray:
    """Coerce ``a`` to a 1-D complex128 array, optionally of length ``n``."""
    v = np.asarray(a, dtype=np.complex128).reshape(-1)
    if v.size and not np.isfinite(v).all():
        raise ValueError("vector entries must be finite")
    if n is not None and v.size != n:
        raise ValueError(f"expected a vector of length {n}, got {v.size}")
    return v


def adjoint(m) -> np.ndarray:
    """Conjugate transpose."""
    return as_complex_matrix(m).conj().T


def det(m) -> complex:
    """Determinant via LU with partial pivoting (exact for triangular inputs)."""
    m = as_complex_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise NonSquare(f"determinant needs a square matrix, got {m.shape}")
    return complex(np.linalg.det(m))


def solve(m, rhs) -> np.ndarray:
    """Solve ``m @ x = rhs`` for x.

    Raises ``Singular`` when an LU pivot falls below
    ``PIVOT_RTOL * norm(m, inf)``; for well-conditioned m the residual
    satisfies ||m x - rhs||_F <= 1e-10 (1 + ||rhs||_F).
    """
    m = as_complex_matrix(m)
    rhs = as_complex_matrix(rhs)
    if m.shape[0] != m.shape[1]:
        raise NonSquare(f"solve needs a square matrix, got {m.shape}")
    if rhs.shape[0] != m.shape[0]:
        raise ValueError(f"rhs has {rhs.shape[0]} rows, expected {m.shape[0]}")
    if m.shape[0] == 0:
        return np.zeros_like(rhs)
    with warnings.catch_warnings():
        # lu_factor warns on exactly-zero pivots; the pivot test below raises.
        warnings.simplefilter("ignore", LinAlgWarning)
        lu, piv = lu_factor(m)
    pivots = np.abs(np.diag(lu))
    if pivots.min() <= PIVOT_RTOL * max(np.linalg.norm(m, np.inf), np.finfo(float).tiny):
        raise Singular(f"pivot {pivots.min():.3e} below threshold")
    return lu_solve((lu, piv), rhs)


def solve_vector(m, b) -> np.ndarray:
    """Solve ``m @ x = b`` for a single right-hand-side vector."""
    b = as_complex_vector(b)
    return solve(m, b.reshape(-1, 1))[:, 0]


def singular_values(m) -> np.ndarray:
    """Singular values of ``m`` in descending order."""
    m = as_complex_matrix(m)
    if min(m.shape) == 0:
        return np.zeros(0)
    return np.linalg.svd(m, compute_uv=False)


def rank(m, tol: float = 0.0) -> int:
    """Numerical rank: number of singular values above ``tol``.

    ``tol = 0`` selects the default cutoff
    ``RANK_RTOL * sigma_max * max(rows, cols)``.
    """
    if tol < 0:
        raise ValueError("rank tolerance must be >= 0")
    m = as_complex_matrix(m)
    sv = singular_values(m)
    if sv.size == 0:
        return 0
    tol_eff = tol if tol > 0 else RANK_RTOL * sv[0] * max(m.shape)
    return int(np.count_nonzero(sv > tol_eff))


def orthonormal_columns(m) -> np.ndarray:
    """Orthonormal basis of the column span of ``m``.

    Modified Gram-Schmidt with one reorthogonalization pass; dependent and
    zero columns are dropped. The result q satisfies ||q* q - I|| <= 1e-12.
    """
    m = as_complex_matrix(m)
    rows, cols = m.shape
    if cols == 0:
        return m.copy()
    drop_tol = DEPENDENT_COL_RTOL * max(np.linalg.norm(m, axis=0).max(), np.finfo(float).tiny)
    kept: list[np.ndarray] = []
    for j in range(cols):
        v = m[:, j].copy()
        for _ in range(2):  # second sweep = reorthogonalization
            for q in kept:
                v -= np.vdot(q, v) * q
        nrm = np.linalg.norm(v)
        if nrm > drop_tol:
            kept.append(v / nrm)
    if not kept:
        return np.zeros((rows, 0), dtype=np.complex128)
    return np.column_stack(kept)


def nullspace(m, cutoff: float) -> np.ndarray:
    """Orthonormal basis of ker(m), treating singular values <= cutoff as zero."""
    m = as_complex_matrix(m)
    rows, cols = m.shape
    if cols == 0:
        return np.zeros((0, 0), dtype=np.complex128)
    if rows == 0:
        return np.eye(cols, dtype=np.complex128)
    _, sv, vh = np.linalg.svd(m, full_matrices=True)
    nnz = int(np.count_nonzero(sv > cutoff))
    return vh[nnz:].conj().T
