"""Exception types shared across the library."""


class CasimirError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateCouplingError(CasimirError):
    """A mirror's scaled coupling vanished where the hard-limit reflection
    denominator needs it (division by zero in the Dirichlet-type limit)."""


class IntegrandDomainError(CasimirError):
    """The integrand returned a non-finite value at a quadrature node."""


class QuadratureConvergenceError(CasimirError):
    """Refinement exhausted without meeting the requested tolerance.

    Carries the last estimate so callers can decide whether to accept it.
    """

    def __init__(self, message, value=None, error_estimate=None):
        super().__init__(message)
        self.value = value
        self.error_estimate = error_estimate


class ClusterOverlapError(CasimirError):
    """Two source clusters of a separable pair overlap within the kernel
    smearing length, where the point-source model is meaningless."""


class LatticeSpecError(CasimirError):
    """A lattice run violates a discretization precondition (placement,
    resolution, box size, or problem-size cap)."""


class IndefiniteMatrixError(CasimirError):
    """The discretized Hamiltonian has a negative eigenvalue, signalling an
    invalid discretization rather than physics."""


class EmptyChannelSetError(CasimirError):
    """A waveguide cutoff admits no propagating channel."""


class ConfigError(CasimirError):
    """A run configuration is malformed; the message names the field."""
