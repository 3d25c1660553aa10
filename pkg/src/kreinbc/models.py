"""Concrete spectral models: star graph of half-lines and 3D point interactions.

Each model packages the finite-dimensional spectral data of a reference
operator H0 with continuous spectrum [0, inf):

* ``q_matrix(z)``    -- the n x n Weyl/Q matrix, holomorphic off [0, inf),
* ``gamma_value``    -- pointwise values of the deficiency basis functions
  g^j_z spanning ker(S* - z),
* ``free_green``     -- the integral kernel of (H0 - z)^{-1},
* ``gamma_gram``     -- the Gram matrix of the deficiency family, recovered
  from the Q matrix through
  (Q(z) - Q(zeta)*) / (z - conj(zeta)).

The square root sqrt(-z) is always taken with positive real part (branch cut
on z in [0, inf)); with this branch Q(conj(z)) = Q(z)* holds for both models.

Star graph
    n copies of [0, inf) glued at the origin. The reference operator has
    Neumann conditions phi'(0) = 0 on each edge; boundary maps are
    G1(phi) = -phi'(0), G2(phi) = phi(0) componentwise. Points are (edge,
    coordinate) pairs, kernels are diagonal in the edge index, and
    Q(z) = 1/sqrt(-z) * I.

3D point interactions
    n distinct centers y_1..y_n in R^3, reference operator the free
    Laplacian. Points are length-3 coordinate triples. The kernel is
    exp(-sqrt(-z)|x-y|) / (4 pi |x-y|); Q has those kernel values at
    distinct centers off the diagonal and the regularized value
    -sqrt(-z)/(4 pi) on the diagonal.
"""

from __future__ import annotations

import abc
import math

import numpy as np
from scipy.integrate import quad

from .errors import (
    CoincidentPoints,
    CoincidentSpectralParams,
    OnBranchCut,
    OutsideResolventSet,
    PointAtCenter,
)

# Distance (in the complex plane) under which an argument counts as sitting
# on the branch cut of the square root.
BRANCH_CUT_TOL = 1e-14

# Distance to [0, inf) under which z is rejected as a spectral parameter.
RESOLVENT_TOL = 1e-12

# Points closer than this to a 3D interaction center hit the kernel
# singularity and are rejected.
POINT_TOL = 1e-12

# Minimum pairwise separation of 3D centers; the off-diagonal Q entries blow
# up as centers merge.
MIN_CENTER_SEPARATION = 1e-9


def sqrt_branch(w: complex) -> complex:
    """Square root with positive real part; cut along the negative real axis.

    Arguments within ``BRANCH_CUT_TOL`` of the cut (including 0) raise
    ``OnBranchCut``. Satisfies sqrt_branch(conj(w)) = conj(sqrt_branch(w)).
    """
    w = complex(w)
    dist_to_cut = abs(w.imag) if w.real <= 0 else abs(w)
    if dist_to_cut <= BRANCH_CUT_TOL:
        raise OnBranchCut(f"sqrt argument {w} lies on the cut (-inf, 0]")
    # numpy's principal branch already has Re >= 0; the cut guard above
    # excludes the Re == 0 boundary.
    return complex(np.sqrt(w))


def _distance_to_positive_axis(z: complex) -> float:
    z = complex(z)
    return abs(z.imag) if z.real >= 0 else abs(z)


class SpectralModel(abc.ABC):
    """Common interface of the concrete models."""

    n: int

    def in_resolvent_set(self, z: complex) -> bool:
        """True when z stays at least ``RESOLVENT_TOL`` away from [0, inf)."""
        return _distance_to_positive_axis(z) > RESOLVENT_TOL

    def _require_resolvent(self, z: complex) -> complex:
        z = complex(z)
        if not self.in_resolvent_set(z):
            raise OutsideResolventSet(f"z={z} is not separated from [0, inf)")
        return z

    @abc.abstractmethod
    def q_matrix(self, z: complex) -> np.ndarray:
        """The n x n Q matrix at z."""

    @abc.abstractmethod
    def gamma_value(self, j: int, point, z: complex) -> complex:
        """Value of the j-th deficiency basis function g^j_z at ``point``."""

    @abc.abstractmethod
    def free_green(self, p, q, z: complex) -> complex:
        """Kernel of the reference resolvent (H0 - z)^{-1} at (p, q)."""

    def gamma_gram(self, z: complex, zeta: complex) -> np.ndarray:
        """Gram matrix of the deficiency families at z and zeta.

        Entry (j, k) equals the inner product of g^j_zeta with g^k_z,
        computed as (Q(z) - Q(zeta)*) / (z - conj(zeta)).
        """
        z = self._require_resolvent(z)
        zeta = self._require_resolvent(zeta)
        denom = z - np.conj(zeta)
        if abs(denom) < 1e-12:
            raise CoincidentSpectralParams(f"z={z} and conj(zeta)={np.conj(zeta)} coincide")
        qz = self.q_matrix(z)
        qzeta = self.q_matrix(zeta)
        return (qz - qzeta.conj().T) / denom

    def _check_index(self, j: int) -> int:
        j = int(j)
        if not 0 <= j < self.n:
            raise IndexError(f"basis index {j} out of range 0..{self.n - 1}")
        return j


class StarGraphModel(SpectralModel):
    """n half-line edges joined at a single vertex, Neumann reference operator."""

    def __init__(self, n: int):
        n = int(n)
        if n < 1:
            raise ValueError("a star graph needs at least one edge")
        self.n = n

    def _check_point(self, p) -> tuple[int, float]:
        try:
            edge, x = p
        except (TypeError, ValueError) as exc:
            raise ValueError(f"star-graph points are (edge, coordinate) pairs, got {p!r}") from exc
        edge = int(edge)
        x = float(x)
        if not 0 <= edge < self.n:
            raise ValueError(f"edge index {edge} out of range 0..{self.n - 1}")
        if not math.isfinite(x) or x < 0:
            raise ValueError(f"edge coordinate must be finite and >= 0, got {x}")
        return edge, x

    def q_matrix(self, z: complex) -> np.ndarray:
        z = self._require_resolvent(z)
        kappa = sqrt_branch(-z)
        return (1.0 / kappa) * np.eye(self.n, dtype=np.complex128)

    def gamma_value(self, j: int, point, z: complex) -> complex:
        j = self._check_index(j)
        edge, x = self._check_point(point)
        z = self._require_resolvent(z)
        if edge != j:
            return 0.0 + 0.0j
        kappa = sqrt_branch(-z)
        return np.exp(-kappa * x) / kappa

    def free_green(self, p, q, z: complex) -> complex:
        """Neumann half-line kernel; edges decouple, diagonal is regular."""
        ep, xp = self._check_point(p)
        eq, xq = self._check_point(q)
        z = self._require_resolvent(z)
        if ep != eq:
            return 0.0 + 0.0j
        kappa = sqrt_branch(-z)
        return (np.exp(-kappa * abs(xp - xq)) + np.exp(-kappa * (xp + xq))) / (2.0 * kappa)


class PointInteraction3DModel(SpectralModel):
    """Finitely many interaction centers in R^3, free-Laplacian reference."""

    def __init__(self, centers):
        pts = np.asarray(centers, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 3:
            raise ValueError(f"centers must be an (n, 3) array, got shape {pts.shape}")
        if pts.shape[0] < 1:
            raise ValueError("at least one center is required")
        if not np.isfinite(pts).all():
            raise ValueError("center coordinates must be finite")
        n = pts.shape[0]
        dists = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=-1)
        off = dists[~np.eye(n, dtype=bool)]
        if off.size and off.min() < MIN_CENTER_SEPARATION:
            raise ValueError(
                f"centers too close: min separation {off.min():.3e} < {MIN_CENTER_SEPARATION}"
            )
        self.n = n
        self.centers = pts
        self._dists = dists

    def _check_point(self, p) -> np.ndarray:
        x = np.asarray(p, dtype=float).reshape(-1)
        if x.size != 3 or not np.isfinite(x).all():
            raise ValueError(f"3D points are finite coordinate triples, got {p!r}")
        return x

    def q_matrix(self, z: complex) -> np.ndarray:
        z = self._require_resolvent(z)
        kappa = sqrt_branch(-z)
        n = self.n
        q = np.empty((n, n), dtype=np.complex128)
        for j in range(n):
            q[j, j] = -kappa / (4.0 * np.pi)
            for k in range(j + 1, n):
                d = self._dists[j, k]
                val = np.exp(-kappa * d) / (4.0 * np.pi * d)
                q[j, k] = val
                q[k, j] = val
        return q

    def gamma_value(self, j: int, point, z: complex) -> complex:
        j = self._check_index(j)
        x = self._check_point(point)
        z = self._require_resolvent(z)
        r = float(np.linalg.norm(x - self.centers[j]))
        if r < POINT_TOL:
            raise PointAtCenter(f"point {x} coincides with center {j}")
        kappa = sqrt_branch(-z)
        return np.exp(-kappa * r) / (4.0 * np.pi * r)

    def free_green(self, p, q, z: complex) -> complex:
        x = self._check_point(p)
        y = self._check_point(q)
        z = self._require_resolvent(z)
        r = float(np.linalg.norm(x - y))
        if r < POINT_TOL:
            raise CoincidentPoints("free kernel is singular on the diagonal")
        kappa = sqrt_branch(-z)
        return np.exp(-kappa * r) / (4.0 * np.pi * r)


def star_overlap_quadrature(model: StarGraphModel, z: complex, zeta: complex) -> np.ndarray:
    """Gram matrix of the star-graph deficiency families by direct quadrature.

    Integrates conj(g^j_zeta(t)) g^k_z(t) over each half-line edge with an
    adaptive Gauss-Kronrod rule, truncated at T where both exponentials have
    decayed below 1e-14, plus the closed-form tail of the truncated
    integrand. Serves as the independent cross-check of ``gamma_gram``;
    off-diagonal entries vanish because the edges decouple.
    """
    a = sqrt_branch(-complex(z))
    b_conj = np.conj(sqrt_branch(-complex(zeta)))
    rate = a + b_conj
    t_max = 14.0 * math.log(10.0) / min(a.real, b_conj.real)
    coeff = 1.0 / (a * b_conj)

    def integrand_re(t: float) -> float:
        return (coeff * np.exp(-rate * t)).real

    def integrand_im(t: float) -> float:
        return (coeff * np.exp(-rate * t)).imag

    re_part, _ = quad(integrand_re, 0.0, t_max, epsabs=1e-12, epsrel=1e-12, limit=400)
    im_part, _ = quad(integrand_im, 0.0, t_max, epsabs=1e-12, epsrel=1e-12, limit=400)
    tail = coeff * np.exp(-rate * t_max) / rate
    overlap = complex(re_part, im_part) + complex(tail)
    return overlap * np.eye(model.n, dtype=np.complex128)
