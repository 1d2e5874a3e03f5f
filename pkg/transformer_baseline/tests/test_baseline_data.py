"""Split-artifact readers: format fidelity, ordering, error surface."""

import csv
import json

import pytest

from transformer_baseline import (
    IoFailure,
    ValidationError,
    check_split_fidelity,
    read_manifest,
    read_split_csv,
)


def test_read_split_csv_parses_exported_files(split_files):
    train = read_split_csv(split_files["train"])
    test = read_split_csv(split_files["test"])
    assert len(train) == 160
    assert len(test) == 40
    labels = {e.label for e in train} | {e.label for e in test}
    assert labels == {0, 1}
    assert all(e.text for e in train)


def test_read_split_csv_preserves_file_order(split_files):
    examples = read_split_csv(split_files["test"])
    with open(split_files["test"], newline="", encoding="utf-8") as handle:
        rows = list(csv.DictReader(handle))
    assert [e.text for e in examples] == [r["text"] for r in rows]
    assert [e.label for e in examples] == [
        1 if r["deceptive"] == "deceptive" else 0 for r in rows
    ]


def test_read_split_csv_missing_column(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("label,text\ndeceptive,hi\n")
    with pytest.raises(ValidationError, match="deceptive"):
        read_split_csv(p)


def test_read_split_csv_bad_label(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text(
        "deceptive,hotel,polarity,source,text\n"
        "deceptive,h,positive,s,fine\n"
        "maybe,h,positive,s,broken\n"
    )
    with pytest.raises(ValidationError, match="row 2"):
        read_split_csv(p)


def test_read_split_csv_no_rows(tmp_path):
    p = tmp_path / "empty.csv"
    p.write_text("deceptive,hotel,polarity,source,text\n")
    with pytest.raises(ValidationError, match="no data rows"):
        read_split_csv(p)


def test_read_split_csv_missing_file(tmp_path):
    with pytest.raises(IoFailure):
        read_split_csv(tmp_path / "nope.csv")


def test_read_manifest_round_trip(split_files):
    manifest = read_manifest(split_files["manifest"])
    assert manifest.seed == 42
    assert manifest.train_fraction == 0.8
    assert len(manifest.train_ids) == 160
    assert len(manifest.test_ids) == 40
    assert not set(manifest.train_ids) & set(manifest.test_ids)


@pytest.mark.parametrize(
    "mutate, message",
    [
        (lambda d: d.pop("seed"), "lacks field"),
        (lambda d: d.update(format_version=99), "format_version"),
        (lambda d: d.update(train_fraction=1.2), "train_fraction"),
        (lambda d: d.update(seed=-1), "seed"),
        (lambda d: d.update(train_ids="oops"), "lists"),
    ],
)
def test_read_manifest_rejects_bad_fields(split_files, tmp_path, mutate, message):
    payload = json.loads(split_files["manifest"].read_text())
    mutate(payload)
    p = tmp_path / "manifest.json"
    p.write_text(json.dumps(payload))
    with pytest.raises(ValidationError, match=message):
        read_manifest(p)


def test_read_manifest_rejects_non_json(tmp_path):
    p = tmp_path / "manifest.json"
    p.write_text("{not json")
    with pytest.raises(ValidationError, match="JSON"):
        read_manifest(p)


def test_read_manifest_missing_file(tmp_path):
    with pytest.raises(IoFailure):
        read_manifest(tmp_path / "nope.json")


def test_check_split_fidelity_accepts_matching_counts(split_files):
    manifest = read_manifest(split_files["manifest"])
    check_split_fidelity(manifest, 160, 40)


@pytest.mark.parametrize("n_train, n_test", [(159, 40), (160, 41), (40, 160)])
def test_check_split_fidelity_rejects_mismatch(split_files, n_train, n_test):
    manifest = read_manifest(split_files["manifest"])
    with pytest.raises(ValidationError, match="manifest lists"):
        check_split_fidelity(manifest, n_train, n_test, source="unit")
