"""Exception types raised by the solvers and the Fock oracle.

The class name doubles as the machine-readable error code emitted by the CLI.
"""


class CatOrthoError(ValueError):
    """Base class for all domain errors."""

    @property
    def code(self) -> str:
        return type(self).__name__


class ZeroAlpha(CatOrthoError):
    pass


class ZeroIndex(CatOrthoError):
    pass


class ZeroD(CatOrthoError):
    pass


class WrongRegion(CatOrthoError):
    pass


class NotQuantized(CatOrthoError):
    pass


class AmbiguousQuantization(CatOrthoError):
    """Residual sits between the snap tolerance and ten times that."""


class DegenerateRealPart(CatOrthoError):
    pass


class DegeneratePhi1(CatOrthoError):
    pass


class DegenerateState(CatOrthoError):
    pass


class TruncationTooSmall(CatOrthoError):
    pass


class VerificationError(CatOrthoError):
    """A computed solution failed its own substitution check."""
