"""Half-line Robin boundary condition: perturbed kernel vs image charges.

For -d^2/dx^2 on [0, inf) with phi'(0) = sigma phi(0), the Green function is
the classical image-charge formula

    G(x, y; z) = [exp(-k|x-y|) + r(k) exp(-k(x+y))] / (2k),
    k = sqrt(-z),  r(k) = (k - sigma)/(k + sigma).

The same kernel must come out of the finite-rank correction of the Neumann
kernel, with the boundary pair A = (1), B = (-sigma).
"""

import numpy as np

from kreinbc import boundary, krein, models


def image_formula(sigma, x, y, z):
    kappa = models.sqrt_branch(-z)
    reflect = (kappa - sigma) / (kappa + sigma)
    return (np.exp(-kappa * abs(x - y)) + reflect * np.exp(-kappa * (x + y))) / (2.0 * kappa)


sigma = -2.0
pair = boundary.validate([[1.0]], [[-sigma]])
star = models.StarGraphModel(1)

print(f"sigma = {sigma} (attractive: bound state at z = {-sigma**2})")
print(f"{'x':>5} {'y':>5} {'z':>12} {'krein route':>24} {'image formula':>24} {'diff':>9}")
rng = np.random.default_rng(1)
for _ in range(8):
    x, y = rng.uniform(0.0, 3.0, size=2)
    z = complex(rng.uniform(-5.0, -0.5), rng.uniform(-1.0, 1.0))
    got = krein.perturbed_green(pair, star, (0, x), (0, y), z)
    want = image_formula(sigma, x, y, z)
    print(f"{x:>5.2f} {y:>5.2f} {z:>12.2f} {got:>24.12f} {want:>24.12f} {abs(got - want):>9.1e}")

print()
print("Limits: sigma -> 0 reproduces the Neumann kernel (image weight +1),")
print("sigma -> inf the Dirichlet kernel (image weight -1):")
for s in (1e-8, 1e8):
    val = image_formula(s, 1.0, 2.0, -1.0)
    print(f"  sigma = {s:<8.0e} G(1, 2; -1) = {val:.12f}")
neumann = star.free_green((0, 1.0), (0, 2.0), -1.0)
print(f"  Neumann kernel          G(1, 2; -1) = {neumann:.12f}")

print()
print("Eigenvalue of the Robin condition from the scanner:")
hits = krein.scan_eigenvalues(pair, star, krein.ScanConfig(-20.0, -0.01))
print("  hits:", [h.z for h in hits], " (analytic: z = -sigma^2 =", -(sigma**2), ")")
