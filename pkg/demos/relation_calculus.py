"""Tour of the linear-relation calculus.

Linear relations generalize operator graphs to multivalued/partial maps;
self-adjoint boundary conditions on an n-dimensional boundary space are
exactly the self-adjoint relations. This script walks through the basic
operations and the two parametrizations of self-adjoint relations.
"""

import numpy as np

from kreinbc import boundary, linrel

rng = np.random.default_rng(0)

print("== graphs embed into relations ==")
L1 = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
L2 = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
g1, g2 = linrel.graph(L1), linrel.graph(L2)
print("dim gr L1 =", g1.dim, " dom is all of C^2:", g1.domain().shape == (2, 2))
print("gr L1 + gr L2 == gr(L1 + L2):", (g1 + g2).equals(linrel.graph(L1 + L2)))
print("(gr L1)^-1 == gr(L1^-1):", g1.inverse().equals(linrel.graph(np.linalg.inv(L1))))

print()
print("== the multivalued relation of the reference extension ==")
vertical = linrel.lambda_ab([[1.0]], [[0.0]])  # {(0, t): t in C}
print("dim =", vertical.dim, " dom dimension =", vertical.domain().shape[1])
print("self-adjoint:", vertical.is_selfadjoint())
print("inverse is the zero operator's graph:", vertical.inverse().equals(linrel.graph([[0.0]])))

print()
print("== adjoints via J(x1, x2) = (x2, -x1) ==")
h = rng.normal(size=(3, 3))
h = h + h.T  # real symmetric
print("gr H self-adjoint for Hermitian H:", linrel.graph(h).is_selfadjoint())
nilpotent = linrel.graph(np.array([[0.0, 1.0], [0.0, 0.0]]))
print("nilpotent graph self-adjoint:", nilpotent.is_selfadjoint())
print("dim Lambda + dim Lambda* = 2n:", nilpotent.dim + nilpotent.adjoint().dim == 4)

print()
print("== two parametrizations of the same relation ==")
u = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)  # swap unitary
pair = boundary.from_unitary(u)
print("A = i(1+U):\n", np.round(pair.A, 12))
print("B = 1-U:\n", np.round(pair.B, 12))
rel = pair.relation()
print("relation dimension:", rel.dim, " self-adjoint:", rel.is_selfadjoint())
print("recovered unitary:\n", np.round(boundary.to_unitary(pair), 12))

print()
print("== left multiplication does not change the relation ==")
m = np.array([[2.0, 1.0], [0.5, 3.0]])
mixed = boundary.validate(m @ pair.A, m @ pair.B)
print("lambda_ab(MA, MB) == lambda_ab(A, B):", mixed.relation().equals(rel))
print("canonical span {(B* x, A* x)} gives it back:",
      boundary.canonical_range_form(mixed).equals(rel))
