# Error Types
# ===========
# Every package raises these instead of bare ValueErrors so the command line
# can tell bad input (exit 2) from a failed certificate (exit 1).


class DomainError(ValueError):
    """An argument is outside the range an operation accepts."""


class ResourceLimitError(DomainError):
    """A requested state or enumeration would exceed the configured caps."""


class CertificateFailure(RuntimeError):
    """An inequality of the proof chain failed on a concrete instance."""
