"""Exceptions raised by the bicomplex frame toolkit."""

from typing import Optional


class BcFrameError(Exception):
    """Base class for all toolkit errors."""

    exit_code: int = 1


class DimensionMismatch(BcFrameError):
    """Raised when two vectors or a vector and a frame differ in dimension."""
    pass


class LengthMismatch(BcFrameError):
    """Raised when a coefficient sequence does not match the frame size."""
    pass


class GridMismatch(BcFrameError):
    """Raised when sampled functions live on different quadrature grids."""
    pass


class ZeroDivisor(BcFrameError):
    """Raised when inverting a bicomplex zero divisor."""
    pass


class EmptySequence(BcFrameError):
    """Raised when a weight sequence or family is empty."""
    pass


class IndexOutOfRange(BcFrameError):
    """Raised when a lattice index is outside the Weyl orbit."""
    pass


class IncompatibleLattice(BcFrameError):
    """Raised when lattice parameters do not divide the signal length."""
    pass


class OrderTooHigh(BcFrameError):
    """Raised when a Hermite order exceeds the configured cap."""
    pass


class QuadratureTooCoarse(BcFrameError):
    """Raised when the Hermite orthonormality residual exceeds its threshold."""
    pass


class NotAFrame(BcFrameError):
    """Raised when an operation requires a frame and the family is not one."""

    exit_code = 2


class NotInvertible(BcFrameError):
    """Raised when a frame operator component is singular."""

    exit_code = 2


class ParseError(BcFrameError):
    """Raised when a request or spec document cannot be decoded."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        """
        Initialize the parse error.

        Args:
            message: What went wrong
            line: 1-based line of the offending token, when known
            column: 1-based column of the offending token, when known
        """
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column
