"""Exception hierarchy.

Mirrors the classical harness's exit-code contract: ``ValidationError``
for bad input or configuration (exit 1), ``RuntimeFailure`` for failures
while executing a valid request (exit 2). Fine-tuning adds three specific
runtime failures: a checkpoint that cannot be loaded, a metrics record
that cannot be validated or written, and an out-of-memory abort that
carries a suggested smaller batch size.
"""


class BaselineError(Exception):
    """Base class for all package errors."""


class ValidationError(BaselineError):
    """Invalid input data or configuration."""


class RuntimeFailure(BaselineError):
    """Failure while executing an otherwise valid request."""


class IoFailure(RuntimeFailure):
    """Filesystem read/write failed."""


class CheckpointUnavailable(RuntimeFailure):
    """The pretrained checkpoint could not be resolved or loaded."""


class SchemaWriteFailure(RuntimeFailure):
    """The metrics record failed schema validation or could not be written."""


class OutOfMemory(RuntimeFailure):
    """Fine-tuning ran out of device memory.

    Carries the batch size that failed and a suggested retry size so the
    caller can surface an actionable message.
    """

    def __init__(self, batch_size: int, suggested: int, detail: str = ""):
        self.batch_size = batch_size
        self.suggested = suggested
        msg = (
            f"out of memory at batch_size={batch_size}; "
            f"retry with batch_size={suggested}"
        )
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
