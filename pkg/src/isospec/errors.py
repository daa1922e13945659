"""Exception types shared across the package."""


class IsospecError(Exception):
    """Base class for all errors raised by this package."""


class InvalidDocument(IsospecError):
    """Input document does not conform to the graph/kernel/map schema."""


class KernelError(IsospecError):
    """Kernel matrix violates row-stochasticity or support constraints."""


class NoNowherezeroStationary(IsospecError):
    """The kernel has no unique everywhere-positive stationary distribution."""


class CapExceeded(IsospecError):
    """Requested computation exceeds the configured enumeration cap."""


class InvalidFamily(IsospecError):
    """A subset family or function family violates its invariants."""


class FrameNotOrthonormal(IsospecError):
    """A function frame fails the weighted orthonormality check."""


class PreconditionUnmet(IsospecError):
    """A theorem checker was called with its hypotheses not satisfied."""


class ConvergenceError(IsospecError):
    """Iterative solver failed to reach its target residual."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual
