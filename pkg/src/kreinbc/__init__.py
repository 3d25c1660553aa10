"""Resolvents of self-adjoint extensions directly from boundary conditions.

Subpackages
-----------
::

 matops    -- dense complex linear algebra helpers (LU, SVD, orthonormal bases)
 linrel    -- calculus of linear relations on C^n (+) C^n
 boundary  -- admissibility of (A, B) pairs and the unitary parametrization
 models    -- star graph of half-lines; 3D point interactions
 krein     -- correction matrices, perturbed Green kernels, eigenvalue scans
 cli       -- the ``krein-bc`` command-line interface
"""

from .boundary import BoundaryPair, from_unitary, to_unitary, validate
from .errors import KreinBCError
from .krein import (
    EigenvalueHit,
    ScanConfig,
    abstract_correction,
    correction_matrix_form1,
    correction_matrix_form2,
    perturbed_green,
    scan_eigenvalues,
    verify_eigenpair,
)
from .linrel import LinearRelation, from_spanning_pairs, graph, lambda_ab
from .models import PointInteraction3DModel, SpectralModel, StarGraphModel, sqrt_branch

__version__ = "0.1.0"

__all__ = [
    "BoundaryPair",
    "EigenvalueHit",
    "KreinBCError",
    "LinearRelation",
    "PointInteraction3DModel",
    "ScanConfig",
    "SpectralModel",
    "StarGraphModel",
    "abstract_correction",
    "correction_matrix_form1",
    "correction_matrix_form2",
    "from_spanning_pairs",
    "from_unitary",
    "graph",
    "lambda_ab",
    "perturbed_green",
    "scan_eigenvalues",
    "sqrt_branch",
    "to_unitary",
    "validate",
    "verify_eigenpair",
]
