"""Exception hierarchy shared across the package."""


class HeraldlinkError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(HeraldlinkError):
    """A scenario configuration is malformed or references missing files."""


class NoHeraldError(HeraldlinkError):
    """The click probability vanished, no state can be heralded."""


class InfeasibleError(HeraldlinkError):
    """A constrained optimization target cannot be reached.

    Carries ``best`` with the maximum attainable constraint value when known.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class FitConvergenceError(HeraldlinkError):
    """The least-squares solver did not converge."""


class NumericalError(HeraldlinkError):
    """Quadrature or integration failed to reach the requested tolerance."""
