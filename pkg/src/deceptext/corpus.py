"""Dataset loading, validation, stratified splitting, and split export.

The input file is a CSV with header columns ``deceptive, hotel, polarity,
source, text`` in any order (RFC-4180 quoting, UTF-8, LF or CRLF). The
``deceptive`` column carries the class label; everything except the label
and the text is kept only as provenance.

Splits are deterministic: ids are shuffled per class with the SplitMix64
generator from :mod:`deceptext.rng` and the first ``floor(train_fraction *
class_size)`` go to train. The exported manifest is JSON with fields
``format_version``, ``seed``, ``train_fraction``, ``train_ids``,
``test_ids``; the train/test CSVs round-trip through :func:`load_corpus`.
"""

from __future__ import annotations

import csv
import enum
import json
import math
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

from .errors import IoFailure, ValidationError
from .rng import SplitMix64

MANIFEST_FORMAT_VERSION = 1

REQUIRED_COLUMNS = ("deceptive", "hotel", "polarity", "source", "text")


class MissingColumn(ValidationError):
    pass


class BadLabel(ValidationError):
    pass


class EmptyText(ValidationError):
    pass


class DegenerateClass(ValidationError):
    pass


class Label(enum.Enum):
    """Review class; DECEPTIVE is the positive class everywhere."""

    DECEPTIVE = "deceptive"
    TRUTHFUL = "truthful"

    @property
    def sign(self) -> int:
        """+1 for DECEPTIVE, -1 for TRUTHFUL (classifier convention)."""
        return 1 if self is Label.DECEPTIVE else -1

    @classmethod
    def parse(cls, raw: str) -> "Label":
        value = raw.strip().lower()
        for member in cls:
            if member.value == value:
                return member
        raise ValueError(f"not a label: {raw!r}")


class Polarity(enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"

    @classmethod
    def parse(cls, raw: str) -> "Polarity":
        value = raw.strip().lower()
        for member in cls:
            if member.value == value:
                return member
        raise ValueError(f"not a polarity: {raw!r}")


@dataclass(frozen=True)
class Review:
    """One labeled review; id is the 0-based row position in its file."""

    id: int
    label: Label
    hotel: str
    polarity: Polarity
    source: str
    text: str


@dataclass(frozen=True)
class Corpus:
    reviews: tuple[Review, ...]
    name: str = ""

    def __len__(self) -> int:
        return len(self.reviews)

    def ids(self) -> tuple[int, ...]:
        return tuple(r.id for r in self.reviews)

    def by_id(self, review_id: int) -> Review:
        return self._index()[review_id]

    def _index(self) -> dict[int, Review]:
        # Rebuilt on demand; corpora are small and immutable.
        return {r.id: r for r in self.reviews}

    def class_counts(self) -> dict[Label, int]:
        counts = {Label.DECEPTIVE: 0, Label.TRUTHFUL: 0}
        for r in self.reviews:
            counts[r.label] += 1
        return counts


@dataclass(frozen=True)
class SplitManifest:
    seed: int
    train_fraction: float
    train_ids: tuple[int, ...]
    test_ids: tuple[int, ...]


def load_corpus(path: str | Path) -> Corpus:
    """Read a review CSV into a Corpus, validating labels and text.

    Raises MissingColumn if the header lacks a required column, BadLabel
    for an unparseable deceptive/polarity value (with 1-based data row
    number), EmptyText for a text field that is empty after trimming.
    """
    path = Path(path)
    try:
        handle = open(path, "r", encoding="utf-8-sig", newline="")
    except OSError as exc:
        raise IoFailure(f"cannot open {path}: {exc}") from exc
    with handle:
        reader = csv.DictReader(handle)
        header = reader.fieldnames or []
        for column in REQUIRED_COLUMNS:
            if column not in header:
                raise MissingColumn(f"{path}: header lacks column {column!r}")
        reviews: list[Review] = []
        for row_number, row in enumerate(reader, start=1):
            try:
                label = Label.parse(row["deceptive"] or "")
            except ValueError:
                raise BadLabel(
                    f"{path}: row {row_number}: bad deceptive value "
                    f"{row['deceptive']!r}"
                ) from None
            try:
                polarity = Polarity.parse(row["polarity"] or "")
            except ValueError:
                raise BadLabel(
                    f"{path}: row {row_number}: bad polarity value "
                    f"{row['polarity']!r}"
                ) from None
            text = row["text"] or ""
            if not text.strip():
                raise EmptyText(f"{path}: row {row_number}: empty text field")
            reviews.append(
                Review(
                    id=row_number - 1,
                    label=label,
                    hotel=row["hotel"] or "",
                    polarity=polarity,
                    source=row["source"] or "",
                    text=text,
                )
            )
    return Corpus(reviews=tuple(reviews), name=path.name)


def stratified_split(corpus: Corpus, train_fraction: float, seed: int) -> SplitManifest:
    """Deterministic per-class split; see module docstring for the rule.

    Classes are processed in a fixed order (DECEPTIVE then TRUTHFUL), each
    consuming the next stretch of the single seeded generator stream.
    """
    if not 0.0 < train_fraction < 1.0:
        raise ValidationError(f"train_fraction must be in (0,1), got {train_fraction}")
    if seed < 0:
        raise ValidationError("seed must be nonnegative")
    per_class: dict[Label, list[int]] = {Label.DECEPTIVE: [], Label.TRUTHFUL: []}
    for review in corpus.reviews:
        per_class[review.label].append(review.id)
    for label, ids in per_class.items():
        if len(ids) < 2:
            raise DegenerateClass(
                f"class {label.value} has {len(ids)} members; need at least 2"
            )
    rng = SplitMix64(seed)
    train_ids: list[int] = []
    test_ids: list[int] = []
    for label in (Label.DECEPTIVE, Label.TRUTHFUL):
        ids = sorted(per_class[label])
        rng.shuffle(ids)
        n_train = math.floor(train_fraction * len(ids))
        if n_train == len(ids):
            raise DegenerateClass(
                f"class {label.value} would receive 0 test members "
                f"(train_fraction={train_fraction})"
            )
        train_ids.extend(ids[:n_train])
        test_ids.extend(ids[n_train:])
    return SplitManifest(
        seed=seed,
        train_fraction=train_fraction,
        train_ids=tuple(sorted(train_ids)),
        test_ids=tuple(sorted(test_ids)),
    )


def write_atomic(path: Path, data: str) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(data)
        os.replace(tmp, path)
    except OSError as exc:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise IoFailure(f"cannot write {path}: {exc}") from exc


def _rows_to_csv(reviews: list[Review]) -> str:
    import io

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(REQUIRED_COLUMNS)
    for r in reviews:
        writer.writerow(
            [r.label.value, r.hotel, r.polarity.value, r.source, r.text]
        )
    return buffer.getvalue()


def manifest_to_json(manifest: SplitManifest) -> str:
    payload = {
        "format_version": MANIFEST_FORMAT_VERSION,
        "seed": manifest.seed,
        "train_fraction": manifest.train_fraction,
        "train_ids": list(manifest.train_ids),
        "test_ids": list(manifest.test_ids),
    }
    return json.dumps(payload, indent=2) + "\n"


def manifest_from_json(text: str) -> SplitManifest:
    payload = json.loads(text)
    if payload.get("format_version") != MANIFEST_FORMAT_VERSION:
        raise ValidationError(
            f"unsupported manifest format_version: {payload.get('format_version')!r}"
        )
    return SplitManifest(
        seed=int(payload["seed"]),
        train_fraction=float(payload["train_fraction"]),
        train_ids=tuple(int(i) for i in payload["train_ids"]),
        test_ids=tuple(int(i) for i in payload["test_ids"]),
    )


def export_split(
    corpus: Corpus, manifest: SplitManifest, out_dir: str | Path
) -> tuple[Path, Path, Path]:
    """Write train.csv, test.csv, and split_manifest.json under out_dir.

    Validates that every manifest id exists in the corpus before touching
    the filesystem. Returns (train_path, test_path, manifest_path).
    """
    known = set(corpus.ids())
    for review_id in (*manifest.train_ids, *manifest.test_ids):
        if review_id not in known:
            raise ValidationError(
                f"manifest references id {review_id} not present in corpus"
            )
    out_dir = Path(out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise IoFailure(f"cannot create {out_dir}: {exc}") from exc
    index = {r.id: r for r in corpus.reviews}
    train_rows = [index[i] for i in manifest.train_ids]
    test_rows = [index[i] for i in manifest.test_ids]
    train_path = out_dir / "train.csv"
    test_path = out_dir / "test.csv"
    manifest_path = out_dir / "split_manifest.json"
    write_atomic(train_path, _rows_to_csv(train_rows))
    write_atomic(test_path, _rows_to_csv(test_rows))
    write_atomic(manifest_path, manifest_to_json(manifest))
    return train_path, test_path, manifest_path


def load_manifest(path: str | Path) -> SplitManifest:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc}") from exc
    return manifest_from_json(text)
