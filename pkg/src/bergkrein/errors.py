"""Exception hierarchy shared by all modules."""


class BergkreinError(Exception):
    """Base class for library errors."""


class RangeError(BergkreinError):
    """Exact rational does not fit into a double."""


class NeutralBasePoint(BergkreinError):
    """Nonzero neutral vector used as a Moebius/projection base point."""


class SingularDenominator(BergkreinError):
    """Denominator 1 - <z,a> vanished (or fell below tolerance)."""

    def __init__(self, msg, step_index=None):
        super().__init__(msg)
        self.step_index = step_index


class OutsideBall(BergkreinError):
    """Base point not inside the indefinite unit ball."""


class DomainViolation(BergkreinError):
    """Argument outside the admissible domain of the map."""


class ProbeSingular(BergkreinError):
    """All probe scales hit a singular denominator."""


class NonPositiveSelfInner(BergkreinError):
    """Vector has <x,x> <= 0 where positivity was required."""


class Infeasible(BergkreinError):
    """Interpolation data violates the solvability criterion."""

    def __init__(self, msg, rho_nodes=None, rho_targets=None):
        super().__init__(msg)
        self.rho_nodes = rho_nodes
        self.rho_targets = rho_targets


class LengthMismatch(BergkreinError):
    """Node and target lists have different lengths."""


class DuplicateNodes(BergkreinError):
    """Interpolation nodes are not pairwise distinct."""


class DimensionMismatch(BergkreinError):
    """Matrix dimensions do not agree."""


class DimensionTooLarge(BergkreinError):
    """Exact routine limited to small dimensions."""


class NotHermitian(BergkreinError):
    """Matrix entries fail the Hermitian symmetry check."""


class RadiusViolation(BergkreinError):
    """Disk point outside the radius where the embedding lands in the ball."""


class UsageError(BergkreinError):
    """Malformed command-line input."""
