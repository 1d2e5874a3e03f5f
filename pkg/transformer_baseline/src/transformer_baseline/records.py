"""Metrics records in the shared benchmark schema.

Both model families write the same JSON record shape; the schema file
here is a byte-for-byte copy of the classical harness's copy, so records
written by either package validate against both. Transformer records
carry sentinel feature settings (ngram 0/0, max_features 0, idf_mode
"none", l2_normalize false) because no n-gram featurizer is involved.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from pathlib import Path

import jsonschema

from .errors import SchemaWriteFailure
from .metrics import Confusion

TRANSFORMER_FEATURE_SENTINEL = {
    "ngram_min": 0,
    "ngram_max": 0,
    "max_features": 0,
    "idf_mode": "none",
    "l2_normalize": False,
}


@lru_cache(maxsize=1)
def metrics_schema() -> dict:
    raw = resources.files("transformer_baseline").joinpath("data/metrics.schema.json")
    return json.loads(raw.read_text(encoding="utf-8"))


def build_record(
    model_name: str,
    *,
    split_seed: int,
    train_fraction: float,
    averaging: str,
    accuracy: float,
    precision: float,
    recall: float,
    f1: float,
    auc: float,
    cm: Confusion,
    runtime_ms: int,
) -> dict:
    return {
        "schema_version": 1,
        "family": "transformer",
        "model": model_name,
        "feature_config": dict(TRANSFORMER_FEATURE_SENTINEL),
        "split": {"seed": split_seed, "train_fraction": train_fraction},
        "averaging": averaging,
        "accuracy": accuracy,
        "precision": precision,
        "recall": recall,
        "f1": f1,
        "auc": auc,
        "confusion": {"tp": cm.tp, "fp": cm.fp, "fn": cm.fn, "tn": cm.tn},
        "runtime_ms": runtime_ms,
    }


def validate_record(record: dict, source: str = "<record>") -> None:
    try:
        jsonschema.validate(record, metrics_schema())
    except jsonschema.ValidationError as err:
        raise SchemaWriteFailure(f"{source}: {err.message}") from err


def write_record(record: dict, path: str | Path) -> Path:
    """Validate the record, then write it as stable, sorted JSON."""
    path = Path(path)
    validate_record(record, source=str(path))
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(record, sort_keys=True, indent=2) + "\n", encoding="utf-8")
    except OSError as exc:
        raise SchemaWriteFailure(f"cannot write metrics record {path}: {exc}") from exc
    return path
