"""Readers for the exported split artifacts.

The classical harness exports a split as three files: ``train.csv`` and
``test.csv`` (columns ``deceptive,hotel,polarity,source,text``) plus a
``split_manifest.json`` with fields ``format_version``, ``seed``,
``train_fraction``, ``train_ids``, ``test_ids``. This module only parses
those files; it contains no splitting logic, so both model families are
guaranteed to see identical test instances. Row counts are cross-checked
against the manifest id lists to catch a train/test/manifest mix-up.

Labels: deceptive is the positive class, encoded 1; truthful is 0.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

from .errors import IoFailure, ValidationError

REQUIRED_COLUMNS = ("deceptive", "hotel", "polarity", "source", "text")
LABEL_TO_ID = {"truthful": 0, "deceptive": 1}
ID_TO_LABEL = {0: "truthful", 1: "deceptive"}
MANIFEST_FORMAT_VERSION = 1


@dataclass(frozen=True)
class Example:
    text: str
    label: int


@dataclass(frozen=True)
class Manifest:
    seed: int
    train_fraction: float
    train_ids: tuple[str, ...]
    test_ids: tuple[str, ...]


def read_split_csv(path: str | Path) -> list[Example]:
    """Parse one exported split CSV into examples, in file order.

    Raises IoFailure if the file cannot be read, ValidationError for a
    missing column, an unknown label value (with 1-based data row number),
    or a file with no data rows.
    """
    path = Path(path)
    try:
        handle = open(path, newline="", encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot read split file {path}: {exc}") from exc
    with handle:
        reader = csv.DictReader(handle)
        header = reader.fieldnames or []
        for column in REQUIRED_COLUMNS:
            if column not in header:
                raise ValidationError(f"{path}: header lacks column {column!r}")
        examples: list[Example] = []
        for row_number, row in enumerate(reader, start=1):
            raw_label = (row["deceptive"] or "").strip().lower()
            if raw_label not in LABEL_TO_ID:
                raise ValidationError(
                    f"{path}: row {row_number}: bad deceptive value {row['deceptive']!r}"
                )
            examples.append(Example(text=row["text"] or "", label=LABEL_TO_ID[raw_label]))
    if not examples:
        raise ValidationError(f"{path}: no data rows")
    return examples


def read_manifest(path: str | Path) -> Manifest:
    """Parse and validate a split manifest."""
    path = Path(path)
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot read manifest {path}: {exc}") from exc
    try:
        payload = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise ValidationError(f"{path}: manifest must be a JSON object")
    for key in ("format_version", "seed", "train_fraction", "train_ids", "test_ids"):
        if key not in payload:
            raise ValidationError(f"{path}: manifest lacks field {key!r}")
    if payload["format_version"] != MANIFEST_FORMAT_VERSION:
        raise ValidationError(
            f"{path}: unsupported manifest format_version {payload['format_version']!r}"
        )
    seed = payload["seed"]
    fraction = payload["train_fraction"]
    if not isinstance(seed, int) or isinstance(seed, bool) or seed < 0:
        raise ValidationError(f"{path}: seed must be a non-negative integer")
    if not isinstance(fraction, (int, float)) or not 0.0 < float(fraction) < 1.0:
        raise ValidationError(f"{path}: train_fraction must be in (0,1)")
    train_ids = payload["train_ids"]
    test_ids = payload["test_ids"]
    if not isinstance(train_ids, list) or not isinstance(test_ids, list):
        raise ValidationError(f"{path}: id fields must be lists")
    return Manifest(
        seed=seed,
        train_fraction=float(fraction),
        train_ids=tuple(str(i) for i in train_ids),
        test_ids=tuple(str(i) for i in test_ids),
    )


def check_split_fidelity(
    manifest: Manifest, n_train: int, n_test: int, *, source: str = ""
) -> None:
    """Require the CSV row counts to match the manifest id lists.

    A mismatch means the files do not belong together (or one was
    regenerated), which would silently break the identical-test-set
    guarantee between model families.
    """
    prefix = f"{source}: " if source else ""
    if n_train != len(manifest.train_ids):
        raise ValidationError(
            f"{prefix}train file has {n_train} rows but the manifest lists "
            f"{len(manifest.train_ids)} train ids"
        )
    if n_test != len(manifest.test_ids):
        raise ValidationError(
            f"{prefix}test file has {n_test} rows but the manifest lists "
            f"{len(manifest.test_ids)} test ids"
        )
