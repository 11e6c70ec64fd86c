"""Exception types shared across the package."""


class ChainError(Exception):
    """Base class for every error raised by this package."""


class InvalidSpecError(ChainError, ValueError):
    """A chain specification violates a structural invariant."""


class InvalidSizeError(InvalidSpecError):
    """A chain length is too short for the requested construction."""


class InvalidSiteError(InvalidSpecError):
    """A site index is out of range or sits on a forbidden edge."""


class InvalidBasisError(ChainError, ValueError):
    """A matrix is not in the basis the operation requires."""


class InvalidMatrixError(ChainError, ValueError):
    """A matrix is non-square, non-finite, or otherwise unusable."""


class InvalidParameterError(ChainError, ValueError):
    """A scalar parameter is outside its admissible range."""


class SolverFailureError(ChainError, RuntimeError):
    """The eigensolver failed to converge or missed its accuracy contract."""

    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class AmbiguousCrossingError(ChainError, RuntimeError):
    """A critical-parameter pre-scan found more than one sign change."""

    def __init__(self, message: str, brackets):
        super().__init__(message)
        self.brackets = list(brackets)


class PersistenceError(ChainError, OSError):
    """Writing results to disk failed. Computed records are attached."""

    def __init__(self, message: str, records=None):
        super().__init__(message)
        self.records = records
