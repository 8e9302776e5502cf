"""Exact linear-programming bounds on the average Hamming distance of binary
codes, with Fourier-weight and noise-stability consequences for Boolean
functions.
"""

__version__ = "0.1.0"


class DomainError(ValueError):
    """Raised when an argument lies outside the domain of an operation."""


class SizeGuardError(RuntimeError):
    """Raised when a computation would exceed a practical size limit."""

    def __init__(self, message, cost=None):
        super().__init__(message)
        self.cost = cost


class InvariantError(AssertionError):
    """Raised when an internal consistency check fails."""
