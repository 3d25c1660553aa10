"""Shared random generators for the test-suite (all explicitly seeded)."""

import numpy as np

from kreinbc import boundary, matops, models


def random_complex_matrix(rng, rows, cols=None):
    cols = rows if cols is None else cols
    return rng.normal(size=(rows, cols)) + 1j * rng.normal(size=(rows, cols))


def haar_like_unitary(rng, n):
    """Unitary from orthonormalizing a complex Gaussian matrix."""
    return matops.orthonormal_columns(random_complex_matrix(rng, n))


def random_invertible(rng, n, max_cond=50.0):
    while True:
        m = random_complex_matrix(rng, n)
        sv = np.linalg.svd(m, compute_uv=False)
        if sv[-1] > 0 and sv[0] / sv[-1] < max_cond:
            return m


def random_valid_pair(rng, n, mix=True):
    """Admissible boundary pair; ``mix`` left-multiplies by a random invertible."""
    pair = boundary.from_unitary(haar_like_unitary(rng, n))
    if not mix:
        return pair
    m = random_invertible(rng, n)
    return boundary.validate(m @ pair.A, m @ pair.B)


def random_nonreal_z(rng, re_lo=-6.0, re_hi=2.0, im_lo=0.3, im_hi=2.0):
    re = rng.uniform(re_lo, re_hi)
    im = rng.uniform(im_lo, im_hi) * (1.0 if rng.uniform() < 0.5 else -1.0)
    return complex(re, im)


def random_negative_z(rng, lo=-8.0, hi=-0.2):
    return float(rng.uniform(lo, hi))


def random_centers(rng, n, min_sep=0.5, box=3.0):
    """n points in a box with pairwise separation at least ``min_sep``."""
    pts = []
    while len(pts) < n:
        cand = rng.uniform(-box, box, size=3)
        if all(np.linalg.norm(cand - p) >= min_sep for p in pts):
            pts.append(cand)
    return np.array(pts)


def random_model(rng, kind, n):
    if kind == "star":
        return models.StarGraphModel(n)
    return models.PointInteraction3DModel(random_centers(rng, n))


def random_point(rng, model, min_center_dist=0.3):
    if isinstance(model, models.StarGraphModel):
        return (int(rng.integers(0, model.n)), float(rng.uniform(0.05, 3.0)))
    while True:
        x = model.centers[rng.integers(0, model.n)] + rng.uniform(-2.0, 2.0, size=3)
        if np.linalg.norm(x - model.centers, axis=1).min() > min_center_dist:
            return x


def bisect_root(f, lo, hi, iterations=200):
    """Plain bisection; assumes a sign change on [lo, hi]."""
    flo = f(lo)
    if flo == 0.0:
        return lo
    if flo * f(hi) > 0:
        raise ValueError("no sign change on the bracket")
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        fmid = f(mid)
        if fmid == 0.0:
            return mid
        if flo * fmid < 0:
            hi = mid
        else:
            lo, flo = mid, fmid
    return 0.5 * (lo + hi)
