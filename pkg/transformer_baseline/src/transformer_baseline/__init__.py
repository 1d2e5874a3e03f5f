"""Transformer fine-tuning baselines over exported review splits.

Consumes the split artifacts written by the classical benchmark harness
(train/test CSVs plus a manifest), fine-tunes pretrained transformer
classifiers on them, and emits metrics records in the shared JSON schema
so both model families can be compared on identical test instances.
"""

from .data import (
    Example,
    Manifest,
    check_split_fidelity,
    read_manifest,
    read_split_csv,
)
from .errors import (
    BaselineError,
    CheckpointUnavailable,
    IoFailure,
    OutOfMemory,
    RuntimeFailure,
    SchemaWriteFailure,
    ValidationError,
)
from .finetune import (
    CHECKPOINTS,
    DISPLAY_NAMES,
    MODEL_IDS,
    FinetuneConfig,
    FinetuneResult,
    RunAllResult,
    finetune_and_evaluate,
    resolve_checkpoint,
    run_all,
    scores_from_logits,
)
from .metrics import (
    AVERAGING_MODES,
    Confusion,
    accuracy,
    confusion_counts,
    precision_recall_f1,
    roc_auc,
)
from .records import (
    TRANSFORMER_FEATURE_SENTINEL,
    build_record,
    metrics_schema,
    validate_record,
    write_record,
)

__all__ = [
    "AVERAGING_MODES",
    "BaselineError",
    "CHECKPOINTS",
    "CheckpointUnavailable",
    "Confusion",
    "DISPLAY_NAMES",
    "Example",
    "FinetuneConfig",
    "FinetuneResult",
    "IoFailure",
    "MODEL_IDS",
    "Manifest",
    "OutOfMemory",
    "RunAllResult",
    "RuntimeFailure",
    "SchemaWriteFailure",
    "TRANSFORMER_FEATURE_SENTINEL",
    "ValidationError",
    "accuracy",
    "build_record",
    "check_split_fidelity",
    "confusion_counts",
    "finetune_and_evaluate",
    "metrics_schema",
    "precision_recall_f1",
    "read_manifest",
    "read_split_csv",
    "resolve_checkpoint",
    "roc_auc",
    "run_all",
    "scores_from_logits",
    "validate_record",
    "write_record",
]
