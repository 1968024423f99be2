"""Exception hierarchy shared by every cyco module."""

from __future__ import annotations


class CycoError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(CycoError):
    """Malformed OpenQASM input; carries the 1-based source line."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UnknownGate(ParseError):
    """Gate name outside the registered basis set."""


class BadIndex(ParseError):
    """Qubit or classical bit index outside its register."""


class MissingDuration(CycoError):
    """A circuit gate kind has no entry in the duration table."""


class ConnectivityViolation(CycoError):
    """Two-qubit gate applied to a pair the coupling graph does not join."""


class UnknownProfile(CycoError):
    """Requested device profile does not exist."""


class InternalInvariantViolation(CycoError):
    """A structural property the implementation guarantees was broken."""


class BadInput(CycoError, ValueError):
    """Numerically invalid argument to a metrics routine."""


class BadDistribution(CycoError, ValueError):
    """Probability distribution that is unnormalized or negative."""
