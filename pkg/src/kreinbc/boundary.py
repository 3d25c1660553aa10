"""Validation and parametrization of boundary-condition pairs (A, B).

A pair of n x n matrices defines the boundary condition A G1(phi) = B G2(phi)
for a self-adjoint extension exactly when

* A B* is Hermitian, and
* the n x 2n block (A|B) has full row rank n.

These two conditions are equivalent to self-adjointness of the relation
{(x1, x2) : A x1 = B x2}, and every self-adjoint relation arises this way;
in fact it can always be written with A = i(1 + U), B = 1 - U for a unitary
U. Both directions of that dictionary are provided here, together with the
boundary operator L = B^{-1} A of extensions disjoint from the reference one
(those with invertible B).

Pairs are stored exactly as given: (A, B) and (MA, MB) describe the same
extension for any invertible M, and no canonical representative is imposed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linrel, matops
from .errors import (
    DimensionMismatch,
    NotDisjoint,
    NotSelfAdjointCondition,
    NotUnitary,
    NumericallySingular,
    RankDeficient,
    Singular,
)

# Relative tolerance on the Hermiticity defect of A B*; relative in ||A|| ||B||
# so that (MA, MB) validates whenever (A, B) does.
HERMITICITY_RTOL = 1e-10

# Tolerance on ||U*U - I|| for unitary inputs and on the Cayley roundtrip.
UNITARY_TOL = 1e-9


@dataclass(frozen=True)
class BoundaryPair:
    """A boundary-condition pair; ``validated`` records whether it passed checks."""

    n: int
    A: np.ndarray = field(repr=False)
    B: np.ndarray = field(repr=False)
    validated: bool = False

    def __post_init__(self):
        a = matops.as_complex_matrix(self.A)
        b = matops.as_complex_matrix(self.B)
        if a.shape != (self.n, self.n) or b.shape != (self.n, self.n):
            raise DimensionMismatch(
                f"A, B must both be {self.n}x{self.n}, got {a.shape} and {b.shape}"
            )
        a = a.copy()
        b = b.copy()
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "A", a)
        object.__setattr__(self, "B", b)

    def relation(self) -> linrel.LinearRelation:
        """The relation {(x1, x2) : A x1 = B x2} defined by this pair."""
        return linrel.lambda_ab(self.A, self.B)


def hermiticity_defect(a, b) -> float:
    """Spectral norm of A B* minus its adjoint (zero for admissible pairs)."""
    a = matops.as_complex_matrix(a)
    b = matops.as_complex_matrix(b)
    ab = a @ b.conj().T
    return float(np.linalg.norm(ab - ab.conj().T, 2))


def validate(a, b) -> BoundaryPair:
    """Check the two admissibility conditions and return a validated pair.

    Raises ``NotSelfAdjointCondition`` when A B* is not Hermitian within
    ``HERMITICITY_RTOL * (1 + ||A|| ||B||)`` and ``RankDeficient`` when
    (A|B) drops below full row rank.
    """
    a = matops.as_complex_matrix(a)
    b = matops.as_complex_matrix(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"A is {a.shape} but B is {b.shape}")
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"A, B must be square, got {a.shape}")
    n = a.shape[0]
    defect = hermiticity_defect(a, b)
    scale = 1.0 + np.linalg.norm(a, 2) * np.linalg.norm(b, 2)
    if defect > HERMITICITY_RTOL * scale:
        raise NotSelfAdjointCondition(
            f"A B* deviates from Hermitian by {defect:.3e} (allowed {HERMITICITY_RTOL * scale:.3e})"
        )
    if matops.rank(np.hstack([a, b])) < n:
        raise RankDeficient("(A|B) does not have full row rank")
    return BoundaryPair(n, a, b, validated=True)


def kernel_intersection_trivial(pair: BoundaryPair) -> bool:
    """Diagnostic: ker A* and ker B* meet only in 0.

    Holds automatically for every validated pair; exposed so that raw pairs
    can be probed. Implemented as a rank test on the stacked 2n x n block
    (A*; B*).
    """
    stacked = np.vstack([pair.A.conj().T, pair.B.conj().T])
    return matops.rank(stacked) == pair.n


def canonical_range_form(pair: BoundaryPair) -> linrel.LinearRelation:
    """The pair's relation written as the span of the pairs (B* e_k, A* e_k).

    For validated pairs this equals ``pair.relation()`` and has dimension n.
    """
    stacked = np.vstack([pair.B.conj().T, pair.A.conj().T])
    return linrel.LinearRelation(pair.n, matops.orthonormal_columns(stacked))


def to_unitary(pair: BoundaryPair) -> np.ndarray:
    """Unitary U with the same relation as the pair, via a Cayley-type map.

    U sends x2 + i x1 to x2 - i x1 over pairs (x1, x2) = (B*u, A*u) in the
    relation, i.e. U solves U (A* + iB*) = (A* - iB*). The result is checked
    to be unitary and to reproduce the original relation through
    (i(1+U), 1-U); both checks failing indicates numerical breakdown rather
    than bad input, hence ``NumericallySingular``.
    """
    a_star = pair.A.conj().T
    b_star = pair.B.conj().T
    w_plus = a_star + 1j * b_star
    w_minus = a_star - 1j * b_star
    try:
        u = matops.solve(w_plus.T, w_minus.T).T
    except Singular as exc:
        raise NumericallySingular("Cayley system A* + iB* is numerically singular") from exc
    eye = np.eye(pair.n)
    if np.linalg.norm(u.conj().T @ u - eye, 2) > UNITARY_TOL:
        raise NumericallySingular("computed U failed the unitarity check")
    roundtrip = linrel.lambda_ab(1j * (eye + u), eye - u)
    if not roundtrip.equals(pair.relation()):
        raise NumericallySingular("computed U does not reproduce the boundary relation")
    return u


def from_unitary(u) -> BoundaryPair:
    """Validated pair (A, B) = (i(1+U), 1-U) from a unitary U."""
    u = matops.as_complex_matrix(u)
    if u.shape[0] != u.shape[1]:
        raise NotUnitary(f"unitary matrix must be square, got {u.shape}")
    n = u.shape[0]
    if np.linalg.norm(u.conj().T @ u - np.eye(n), 2) > UNITARY_TOL:
        raise NotUnitary("U*U deviates from the identity beyond tolerance")
    return validate(1j * (np.eye(n) + u), np.eye(n) - u)


def disjoint_operator(pair: BoundaryPair) -> np.ndarray:
    """Boundary operator L = B^{-1} A of a pair with invertible B.

    Such pairs describe extensions disjoint from the reference extension
    (the one with A = 1, B = 0); L is self-adjoint as a consequence of the
    admissibility conditions. Raises ``NotDisjoint`` when B is singular.
    """
    if matops.rank(pair.B) < pair.n:
        raise NotDisjoint("B is singular; no boundary operator exists")
    try:
        op = matops.solve(pair.B, pair.A)
    except Singular as exc:
        raise NotDisjoint("B is numerically too ill-conditioned to invert") from exc
    defect = np.linalg.norm(op - op.conj().T, 2)
    if defect > 1e-9 * (1.0 + np.linalg.norm(op, 2)):
        raise NotDisjoint(
            f"computed L deviates from self-adjoint by {defect:.3e}; B too ill-conditioned"
        )
    return op
