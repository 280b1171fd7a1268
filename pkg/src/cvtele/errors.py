"""Exception types shared across the package."""


class CVTeleError(Exception):
    """Base class for all package errors."""


class ConvergenceError(CVTeleError):
    """A truncation or iterative procedure failed to reach its tolerance.

    ``norm_deficit`` carries the achieved Fock-space norm deficit when the
    failure is a truncation one; ``best_estimate`` carries the last value of
    an iterative estimate.
    """

    def __init__(self, message, *, norm_deficit=None, best_estimate=None):
        super().__init__(message)
        self.norm_deficit = norm_deficit
        self.best_estimate = best_estimate


class DomainError(CVTeleError, ValueError):
    """Parameters outside the domain where a formula or integral is defined."""


class DegeneratePlanError(CVTeleError):
    """A generation plan whose post-selected component vanishes."""


class ConfigError(CVTeleError, ValueError):
    """Invalid run configuration (CLI flags or config file)."""
