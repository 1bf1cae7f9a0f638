"""Exception types shared across the solver modules."""

from __future__ import annotations


class NuDiracError(Exception):
    """Base class for all errors raised by :mod:`nudirac`."""


class QuadratureError(NuDiracError):
    """Adaptive quadrature exhausted its subdivision budget."""


class NegativeDiscriminant(NuDiracError, ValueError):
    """A square-root argument of the NU parameter set is negative."""


class NonNormalizable(NuDiracError):
    """The closed-form wavefunction does not decay at one of the boundaries."""


class UnsupportedChannel(NuDiracError, ValueError):
    """The requested kappa is outside the channel the closed form covers."""


class NoRootFound(NuDiracError):
    """No sign change of the eigenvalue equation inside the scan window."""

    def __init__(self, message: str, windows=()):
        super().__init__(message)
        self.windows = list(windows)


class BracketTooNarrow(NuDiracError):
    """A real-domain window of the residual touches the scan boundary."""


class LevelAbsent(NuDiracError):
    """The shooting oracle found no bound level with the requested node count."""
