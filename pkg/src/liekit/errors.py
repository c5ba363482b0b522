"""Exception types raised across the package."""


class LieError(Exception):
    """Base class for all errors raised by liekit."""


class DimensionError(LieError, ValueError):
    pass


class SymmetryError(LieError, ValueError):
    pass


class SingularityError(LieError, ArithmeticError):
    pass


class BranchError(LieError, ArithmeticError):
    pass


class ConstructionError(LieError, ValueError):
    pass


class ClosureError(LieError, ValueError):
    """Basis is not closed under the bracket."""

    def __init__(self, message, worst_pair=None, residual=None):
        super().__init__(message)
        self.worst_pair = worst_pair
        self.residual = residual


class PreconditionError(LieError, ValueError):
    pass


class CompactTypeError(PreconditionError):
    """Operation needs a compact semisimple algebra (negative-definite Killing form)."""


class MembershipError(LieError, ValueError):
    """A matrix left the algebra it was supposed to live in."""


class GenericityError(LieError, RuntimeError):
    pass


class MultiplicityError(LieError, RuntimeError):
    pass


class RegularityError(LieError, ValueError):
    def __init__(self, message, vanishing=()):
        super().__init__(message)
        self.vanishing = list(vanishing)


class SimpleRootError(LieError, RuntimeError):
    pass


class GenerationError(LieError, RuntimeError):
    pass


class CrystallographyError(LieError, ValueError):
    pass


class DegeneratePlaneError(LieError, ValueError):
    pass


class ConsistencyError(LieError, RuntimeError):
    pass


class EinsteinError(LieError, RuntimeError):
    pass


class CanonicalFormError(LieError, RuntimeError):
    pass
