"""Exception hierarchy.

Two families matter for the CLI exit-code contract: ``ValidationError``
(bad input or configuration, exit 1) and ``RuntimeFailure`` (IO and other
failures at run time, exit 2). Specific error types live next to the code
that raises them and subclass one of these.
"""


class DeceptextError(Exception):
    """Base class for all package errors."""


class ValidationError(DeceptextError):
    """Invalid input data or configuration."""


class RuntimeFailure(DeceptextError):
    """Failure while executing an otherwise valid request."""


class IoFailure(RuntimeFailure):
    """Filesystem read/write failed."""
