"""Bound states of a delta coupling on a star graph.

n half-lines meet at one vertex; the wavefunction is continuous across the
vertex and the summed outgoing derivatives equal theta times the vertex
value. For theta < 0 there is a single bound state at z = -(theta/n)^2,
which the scanner should recover from the condition det(B Q(z) - A) = 0.
"""

import numpy as np

from kreinbc import boundary, krein, models


def delta_pair(n, theta):
    a = np.zeros((n, n), dtype=complex)
    a[n - 1, :] = -1.0  # sum of -Gamma_1 entries = total outgoing derivative
    b = np.zeros((n, n), dtype=complex)
    for row in range(n - 1):  # continuity chain phi_j(0) = phi_{j+1}(0)
        b[row, row] = 1.0
        b[row, row + 1] = -1.0
    b[n - 1, 0] = theta
    return boundary.validate(a, b)


print(f"{'n':>3} {'theta':>7} {'found z':>18} {'analytic':>12} {'residual':>10}")
for n in (2, 3, 5):
    model = models.StarGraphModel(n)
    for theta in (-1.0, -3.0, -6.0):
        pair = delta_pair(n, theta)
        hits = krein.scan_eigenvalues(pair, model, krein.ScanConfig(-40.0, -0.001))
        analytic = -((theta / n) ** 2)
        for hit in hits:
            report = krein.verify_eigenpair(pair, model, hit)
            print(
                f"{n:>3} {theta:>7.2f} {hit.z:>18.12f} {analytic:>12.6f}"
                f" {report['boundary_residual']:>10.2e}"
            )

print()
print("The eigenfunction is the same decaying exponential on every edge;")
print("its boundary-space direction is the scanner's null vector:")
pair = delta_pair(3, -3.0)
hit = krein.scan_eigenvalues(pair, models.StarGraphModel(3), krein.ScanConfig(-10.0, -0.01))[0]
print("z =", hit.z)
print("null vector (components equal up to phase):", np.round(hit.null_vector, 9))

print()
print("Repulsive coupling (theta > 0) binds nothing:")
pair = delta_pair(3, 2.0)
hits = krein.scan_eigenvalues(pair, models.StarGraphModel(3), krein.ScanConfig(-40.0, -0.001))
print("hits:", hits)
