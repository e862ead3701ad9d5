"""Shared exception types."""


class BenchError(Exception):
    """Base class for all harness errors."""


class ValidationError(BenchError):
    """Input data or configuration failed validation."""


class ConfigurationError(BenchError):
    """A required template, credential, or path is missing."""


class TransportError(BenchError):
    """All delivery attempts for an HTTP request failed."""

    def __init__(self, message: str, *, status: int | None = None, retries: int = 0):
        super().__init__(message)
        self.status = status
        self.retries = retries


class ProtocolError(BenchError):
    """The peer answered with a body the wire protocol does not allow."""
