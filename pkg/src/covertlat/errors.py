"""Exception types shared across the package."""

from __future__ import annotations


class CovertLatticeError(Exception):
    """Base class for all package-specific errors."""


class InvalidVertexError(CovertLatticeError, ValueError):
    """A vertex does not belong to the lattice it was declared on."""


class KindMismatchError(CovertLatticeError, ValueError):
    """An operation combined objects living on different lattice kinds."""


class UnsupportedKindError(CovertLatticeError, ValueError):
    """The requested (lattice kind, operation) combination is not defined."""


class BoundViolationError(CovertLatticeError, RuntimeError):
    """A boundary-size lower bound failed on a concrete vertex set.

    The bounds hold for every finite set, so seeing this error means the
    lattice adjacency or the bound arithmetic is buggy.  The offending
    report is attached for diagnosis.
    """

    def __init__(self, report):
        self.report = report
        super().__init__(
            f"boundary bound violated: |boundary|={report.boundary_size} "
            f"< bound={report.bound_value:.6f} for |S|={report.set_size} "
            f"on {report.lattice_kind.value} ({report.which})"
        )


class DeviceFormatError(CovertLatticeError, ValueError):
    """A device document is malformed or geometrically inconsistent."""


class InfeasiblePlacementError(CovertLatticeError, RuntimeError):
    """No placement of the requested size fits on the device.

    Carries the largest size that does fit, so callers can retry.
    """

    def __init__(self, requested_n: int, largest_feasible_n: int):
        self.requested_n = requested_n
        self.largest_feasible_n = largest_feasible_n
        super().__init__(
            f"no placement for n={requested_n}; "
            f"largest feasible n on this device is {largest_feasible_n}"
        )


class PreconditionError(CovertLatticeError, ValueError):
    """An operation's documented precondition was violated by the caller."""
