"""Three routes to the same correction matrix, plus the Q-function identity.

The finite-rank resolvent correction can be computed as

  (1)  B* (Q(z) B* - A*)^{-1}          -- adjoint form
  (2)  (B Q(z) - A)^{-1} B             -- direct form
  (3)  the operator whose graph is (gr Q(z) - Lambda^{A,B})^{-1}
                                        -- pure relation calculus

(1) and (2) are linear solves; (3) never forms an inverse matrix and goes
through subspace arithmetic instead, so it is a genuinely independent
cross-check. The script also verifies the Gram identity that pins down the
Q matrix against direct numerical integration of the deficiency functions.
"""

import numpy as np

from kreinbc import boundary, krein, matops, models

rng = np.random.default_rng(2)
n = 3
star = models.StarGraphModel(n)

print("== agreement of the three routes ==")
print(f"{'z':>14} {'|C1 - C2|':>12} {'|C1 - C3|':>12}")
for _ in range(6):
    u = matops.orthonormal_columns(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
    pair = boundary.from_unitary(u)
    z = complex(rng.uniform(-5, 1), rng.uniform(0.3, 2) * (-1) ** rng.integers(2))
    q = star.q_matrix(z)
    c1 = krein.correction_matrix_form1(pair, q)
    c2 = krein.correction_matrix_form2(pair, q)
    c3 = krein.abstract_correction(pair, star, z)
    print(f"{z:>14.3f} {np.abs(c1 - c2).max():>12.2e} {np.abs(c1 - c3).max():>12.2e}")

print()
print("== disjoint pairs reduce to a resolvent of the boundary operator ==")
alpha = -0.7
pair = boundary.validate(alpha * np.eye(n), np.eye(n))
lop = boundary.disjoint_operator(pair)
z = -2.0 + 1.0j
q = star.q_matrix(z)
direct = np.linalg.inv(q - lop)
print("|C - (Q - L)^{-1}| =", np.abs(krein.correction_matrix_form2(pair, q) - direct).max())

print()
print("== Q-function Gram identity vs quadrature ==")
print("entry (j,j) of (Q(z) - Q(zeta)*)/(z - conj(zeta)) must equal the overlap")
print("integral of the deficiency functions at zeta and z:")
print(f"{'z':>14} {'zeta':>14} {'identity':>24} {'quadrature':>24}")
m1 = models.StarGraphModel(1)
for (z, zeta) in [(-1.0, -4.0), (-2.0 + 1.0j, -0.5 - 0.8j), (1.5 + 2.0j, -3.0 + 0.4j)]:
    gram = m1.gamma_gram(z, zeta)[0, 0]
    quad = models.star_overlap_quadrature(m1, z, zeta)[0, 0]
    print(f"{z:>14.2f} {zeta:>14.2f} {gram:>24.12f} {quad:>24.12f}")

print()
print("== conjugation symmetry that links the two matrix forms ==")
u = matops.orthonormal_columns(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
pair = boundary.from_unitary(u)
z = -1.2 + 0.9j
c1 = krein.correction_matrix_form1(pair, star.q_matrix(z))
c2_bar = krein.correction_matrix_form2(pair, star.q_matrix(np.conj(z)))
print("|form1(z) - form2(conj z)*| =", np.abs(c1 - c2_bar.conj().T).max())
