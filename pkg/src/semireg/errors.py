"""Exception hierarchy shared by all modules."""


class SemiregError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(SemiregError, ValueError):
    """Malformed input: bad permutation, mismatched degrees, bad JSON, ..."""


class CapExceeded(SemiregError):
    """A group enumeration or search exceeded its explicit size budget."""


class NotInvariant(ValidationError):
    pass


class NotTransitive(ValidationError):
    pass


class NotPrimitive(ValidationError):
    pass


class NotAbelian(ValidationError):
    pass


class NotSemiregular(ValidationError):
    pass


class BadBaseChoice(ValidationError):
    pass


class NotInvariantUnderH(ValidationError):
    pass


class NotASubgroup(ValidationError):
    pass


class BaseVectorMismatch(ValidationError):
    pass


class WrongOrbitCount(ValidationError):
    pass


class BadParameters(ValidationError):
    pass


class NotAnEigenvalue(SemiregError):
    pass


class SolverFailure(SemiregError):
    pass


class OracleDisagreement(SemiregError):
    """The theory-driven path and a brute-force oracle produced different answers."""
