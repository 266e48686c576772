"""Exceptions raised across the aesworkbench package."""


class AesError(Exception):
    """Base class for every error raised by aesworkbench."""


class PoleAtC(AesError):
    """The lower Kummer parameter sits on a forbidden nonpositive integer."""


class NoConvergence(AesError):
    """A series failed to meet its error budget."""


class Overflow(AesError):
    """A recurrence left the range of binary64 numbers."""


class GammaPole(AesError):
    """Both Gamma factors of a parabolic cylinder function are at poles."""


class InvalidSpec(AesError, ValueError):
    """An algebra specification is malformed (all zero, non-finite...)."""


class NoEigenstate(AesError):
    """The algebra element has no eigenstate at all."""


class NonNormalizable(AesError):
    """No branch of the analytic solution is normalizable."""


class NonIntegerExponent(AesError):
    """A first-order exponent is not a nonnegative integer."""


class DegenerateNorm(AesError):
    """The normalization denominator of a superposition vanishes."""


class ZeroMean(AesError):
    """A statistic is undefined because the mean photon number is zero."""


class NotConverged(AesError):
    """A truncated Fock vector is not converged."""

    def __init__(self, msg: str, tail_mass: float | None = None) -> None:
        """Store the measured tail mass with the message.

        Args:
            msg (str): Error message.
            tail_mass (float | None, optional): Measured tail mass. Defaults to
            None.
        """
        super().__init__(msg)
        self.tail_mass = tail_mass


class TruncationNotConverged(NotConverged):
    """The tail of a Fock vector exceeds the configured threshold."""


class ConfigError(AesError, ValueError):
    """A run configuration is invalid."""
