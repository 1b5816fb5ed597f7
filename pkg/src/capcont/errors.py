"""Exception types shared across the package."""

from __future__ import annotations


class CapcontError(Exception):
    """Base class for all package errors."""


class DimensionError(CapcontError, ValueError):
    """Incompatible or oversized dimensions."""


class ArgumentError(CapcontError, ValueError):
    """Argument outside its documented domain."""


class TPViolationError(ArgumentError):
    """A Kraus family that was required to be trace-preserving is not."""


class NumericError(CapcontError, RuntimeError):
    """A numerical routine failed to deliver its contract.

    Carries the name of the failed stage so callers can tell a solver
    stall from, say, an eigendecomposition that did not converge.
    """

    def __init__(self, stage: str, message: str):
        super().__init__(f"{stage}: {message}")
        self.stage = stage


class CPViolationError(CapcontError, ValueError):
    """A map that was required to be completely positive is not.

    Carries the most negative Choi eigenvalue as evidence.
    """

    def __init__(self, min_eigenvalue: float):
        super().__init__(
            f"map is not completely positive: most negative Choi eigenvalue "
            f"{min_eigenvalue:.3e}"
        )
        self.min_eigenvalue = min_eigenvalue
