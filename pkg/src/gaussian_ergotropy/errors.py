"""Exception hierarchy shared by every module of the package."""


class GaussianErgotropyError(Exception):
    """Base class for all errors raised by this package."""


class InvalidArgumentError(GaussianErgotropyError, ValueError):
    """An input violates a documented precondition."""


class InvalidChannelError(InvalidArgumentError):
    """A channel triple (X, Y, x) fails the complete-positivity condition.

    Attributes:
        min_eigenvalue: most negative eigenvalue of ``Y + iΩ - iXΩXᵀ``.
    """

    def __init__(self, message, min_eigenvalue):
        super().__init__(message)
        self.min_eigenvalue = min_eigenvalue


class UnsupportedInputError(InvalidArgumentError):
    """The input is valid in general but outside what an operation handles."""


class NumericalFailureError(GaussianErgotropyError, ArithmeticError):
    """A computation lost too much accuracy to be trusted.

    Attributes:
        residual: the offending residual or diagnostic value, when available.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class TruncationError(NumericalFailureError):
    """A Fock-space density matrix has too much weight near the cutoff."""
