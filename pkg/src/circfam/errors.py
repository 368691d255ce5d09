"""Exception hierarchy shared by all circfam modules."""


class CircfamError(Exception):
    """Base class for all errors raised by this package."""


class InvalidSpecError(CircfamError, ValueError):
    """A circulant spec or matrix shape is malformed."""


class DimensionError(CircfamError, ValueError):
    """Operands have incompatible dimensions or ground sets."""


class UniformityError(CircfamError, ValueError):
    """A family member does not have the required number of elements."""


class ParameterRangeError(CircfamError, ValueError):
    """Construction or checker parameters violate a required inequality."""


class DivisibilityError(ParameterRangeError):
    """A parameter fails a required divisibility condition."""


class OrderCapError(CircfamError, ValueError):
    """The requested instance exceeds the supported order cap."""


class NotADecompositionError(CircfamError, ValueError):
    """The supplied factor pair does not multiply to the claimed matrix."""


class CertificateError(CircfamError, ValueError):
    """A certificate file is malformed or fails verification preconditions."""
