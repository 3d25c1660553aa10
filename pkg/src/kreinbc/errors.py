"""Exception hierarchy shared across the package."""


class KreinBCError(Exception):
    """Base class for all errors raised by this package."""


class NonSquare(KreinBCError):
    """A square matrix was required."""


class DimensionMismatch(KreinBCError):
    """Operands have incompatible dimensions."""


class Singular(KreinBCError):
    """A linear solve hit a numerically singular matrix."""


class NotSelfAdjointCondition(KreinBCError):
    """A·B* is not Hermitian, so (A, B) defines no self-adjoint boundary condition."""


class RankDeficient(KreinBCError):
    """The n x 2n block (A|B) does not have full row rank."""


class NotDisjoint(KreinBCError):
    """B is singular; the extension has no boundary operator L = B^{-1}A."""


class NotUnitary(KreinBCError):
    """The supplied matrix is not unitary within tolerance."""


class NumericallySingular(KreinBCError):
    """Internal solve failed for an input that should have been regular."""


class OnBranchCut(KreinBCError):
    """Square-root argument lies on the branch cut."""


class OutsideResolventSet(KreinBCError):
    """Spectral parameter z lies on (or too close to) the essential spectrum [0, inf)."""


class PointAtCenter(KreinBCError):
    """Evaluation point coincides with an interaction center."""


class CoincidentPoints(KreinBCError):
    """A singular kernel was evaluated on its diagonal."""


class CoincidentSpectralParams(KreinBCError):
    """Gram matrix requested at z = conj(zeta), where the defining quotient degenerates."""


class SingularAtZ(KreinBCError):
    """B·Q(z) - A (or its adjoint partner) is singular at this z."""


class NotAGraph(KreinBCError):
    """The inverted relation is not the graph of an everywhere-defined operator."""


class VerificationFailed(KreinBCError):
    """An eigenpair failed its boundary-condition residual check."""


class ConfigParseError(KreinBCError):
    """A model/boundary configuration file could not be parsed."""


class BadRange(KreinBCError):
    """An invalid scan range or grid was requested."""
