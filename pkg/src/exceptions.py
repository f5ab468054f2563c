class HermitianError(Exception):
    """Base class for every error raised by the package."""

    def __init__(self, message):
        super().__init__(message)
        self.message = message


class FieldError(HermitianError):
    """Raised when a field cannot be built (q not a prime power, too large)."""


class ParameterError(HermitianError):
    """Raised when code or decoder parameters violate their constraints."""


class PolynomialError(HermitianError):
    """Raised on division by zero or duplicate interpolation abscissae."""


class ModuleMinimisationError(HermitianError):
    """Raised when a module basis is rank deficient or a selection is impossible."""


class SeriesError(HermitianError):
    """Raised when a truncated series operation is undefined"""


class EncodingError(HermitianError):
    """Raised when a message lies outside the message space."""
