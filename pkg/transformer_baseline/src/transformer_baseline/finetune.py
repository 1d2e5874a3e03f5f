"""Fine-tuning driver: one pretrained checkpoint, one exported split.

Each supported model id maps to a published checkpoint with a binary
classification head fine-tuned on the exported train file; evaluation on
the exported test file produces one metrics record in the shared schema.
Deceptive is the positive class. The decision score for ranking is the
positive-class margin, logit(deceptive) minus logit(truthful), which is
monotone in the softmax probability of the positive class; a score of
exactly zero predicts truthful, matching the classical rule.

Training is plain full fine-tuning: AdamW at a constant learning rate,
shuffled mini-batches, per-batch dynamic padding. Smoke mode caps the
train set at its first 64 rows and runs a single epoch so the pipeline
can be exercised end to end on modest hardware; its output is still a
schema-valid record.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np
import torch
from transformers import AutoModelForSequenceClassification, AutoTokenizer

from .data import Example, check_split_fidelity, read_manifest, read_split_csv
from .errors import CheckpointUnavailable, OutOfMemory, ValidationError
from .metrics import (
    Confusion,
    accuracy,
    confusion_counts,
    precision_recall_f1,
    roc_auc,
)
from .records import build_record, write_record

MODEL_IDS = ("bert", "roberta", "distilbert", "xlnet")
CHECKPOINTS = {
    "bert": "bert-base-uncased",
    "roberta": "roberta-base",
    "distilbert": "distilbert-base-uncased",
    "xlnet": "xlnet-base-cased",
}
DISPLAY_NAMES = {
    "bert": "BERT",
    "roberta": "RoBERTa",
    "distilbert": "DistilBERT",
    "xlnet": "XLNet",
}
RECORD_AVERAGING = "weighted"
SMOKE_TRAIN_EXAMPLES = 64
SMOKE_EPOCHS = 1


@dataclass(frozen=True)
class FinetuneConfig:
    """Settings for one fine-tuning run.

    checkpoint_path overrides the published checkpoint name with a local
    directory or an alternate hub id; smoke caps the run as described in
    the module docstring.
    """

    model_id: str
    epochs: int = 3
    batch_size: int = 16
    learning_rate: float = 2e-5
    max_sequence_length: int = 256
    seed: int = 42
    checkpoint_path: str | None = None
    smoke: bool = False

    def __post_init__(self) -> None:
        if self.model_id not in MODEL_IDS:
            raise ValidationError(
                f"model_id must be one of {MODEL_IDS}, got {self.model_id!r}"
            )
        if not isinstance(self.epochs, int) or self.epochs < 1:
            raise ValidationError(f"epochs must be a positive integer, got {self.epochs!r}")
        if not isinstance(self.batch_size, int) or self.batch_size < 1:
            raise ValidationError(
                f"batch_size must be a positive integer, got {self.batch_size!r}"
            )
        if not self.learning_rate > 0:
            raise ValidationError(f"learning_rate must be > 0, got {self.learning_rate!r}")
        if not isinstance(self.max_sequence_length, int) or self.max_sequence_length < 1:
            raise ValidationError(
                f"max_sequence_length must be a positive integer, "
                f"got {self.max_sequence_length!r}"
            )
        if not isinstance(self.seed, int) or isinstance(self.seed, bool) or self.seed < 0:
            raise ValidationError(f"seed must be a non-negative integer, got {self.seed!r}")


@dataclass(frozen=True)
class FinetuneResult:
    model_id: str
    record: dict
    path: Path


@dataclass(frozen=True)
class RunAllResult:
    results: tuple[FinetuneResult, ...]
    failures: dict[str, str]

    @property
    def complete(self) -> bool:
        return not self.failures


def resolve_checkpoint(config: FinetuneConfig) -> str:
    return config.checkpoint_path or CHECKPOINTS[config.model_id]


def scores_from_logits(logits) -> list[float]:
    """Positive-class margin per row of a (n, 2) logit array.

    score = logit(deceptive) - logit(truthful), the quantity that is
    monotone in softmax P(deceptive), so AUC over these scores equals
    AUC over probabilities.
    """
    arr = np.asarray(logits, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValidationError(f"expected (n, 2) logits, got shape {arr.shape}")
    return (arr[:, 1] - arr[:, 0]).tolist()


def _seed_everything(seed: int) -> None:
    random.seed(seed)
    np.random.seed(seed % 2**32)
    torch.manual_seed(seed)
    if torch.cuda.is_available():
        torch.cuda.manual_seed_all(seed)


def _device() -> torch.device:
    return torch.device("cuda" if torch.cuda.is_available() else "cpu")


def _load_checkpoint(config: FinetuneConfig):
    source = resolve_checkpoint(config)
    try:
        tokenizer = AutoTokenizer.from_pretrained(source)
        model = AutoModelForSequenceClassification.from_pretrained(source, num_labels=2)
    except (OSError, ValueError) as exc:
        raise CheckpointUnavailable(f"cannot load checkpoint {source!r}: {exc}") from exc
    return tokenizer, model


def _encode(tokenizer, batch: Sequence[Example], max_length: int, device: torch.device):
    enc = tokenizer(
        [e.text for e in batch],
        padding=True,
        truncation=True,
        max_length=max_length,
        return_tensors="pt",
    )
    return enc.to(device)


def _looks_like_oom(exc: BaseException) -> bool:
    text = str(exc).lower()
    return "out of memory" in text or "not enough memory" in text


def _train(model, tokenizer, train: Sequence[Example], config: FinetuneConfig,
           device: torch.device, epochs: int) -> None:
    optimizer = torch.optim.AdamW(model.parameters(), lr=config.learning_rate)
    shuffler = torch.Generator().manual_seed(config.seed)
    model.train()
    for _ in range(epochs):
        order = torch.randperm(len(train), generator=shuffler).tolist()
        for start in range(0, len(order), config.batch_size):
            batch = [train[i] for i in order[start:start + config.batch_size]]
            enc = _encode(tokenizer, batch, config.max_sequence_length, device)
            labels = torch.tensor([e.label for e in batch], device=device)
            out = model(**enc, labels=labels)
            out.loss.backward()
            optimizer.step()
            optimizer.zero_grad()


def _predict_scores(model, tokenizer, examples: Sequence[Example],
                    config: FinetuneConfig, device: torch.device) -> list[float]:
    model.eval()
    scores: list[float] = []
    with torch.no_grad():
        for start in range(0, len(examples), config.batch_size):
            batch = examples[start:start + config.batch_size]
            enc = _encode(tokenizer, batch, config.max_sequence_length, device)
            logits = model(**enc).logits.detach().cpu().numpy()
            scores.extend(scores_from_logits(logits))
    return scores


def finetune_and_evaluate(
    train_file: str | Path,
    test_file: str | Path,
    manifest_file: str | Path,
    config: FinetuneConfig,
    out_dir: str | Path,
) -> FinetuneResult:
    """Fine-tune one model on the exported split and write its record.

    Reads the exported train/test CSVs and manifest as-is (row counts are
    cross-checked against the manifest; nothing is re-split), fine-tunes
    the checkpoint's classification head plus body, scores the full test
    file, and writes transformer_{model_id}_seed{seed}.json under out_dir.

    Raises CheckpointUnavailable if the checkpoint cannot be loaded,
    OutOfMemory (with a suggested smaller batch size) if training or
    scoring exhausts device memory, SchemaWriteFailure if the record
    fails validation or cannot be written.
    """
    t0 = time.perf_counter()
    manifest = read_manifest(manifest_file)
    train = read_split_csv(train_file)
    test = read_split_csv(test_file)
    check_split_fidelity(manifest, len(train), len(test), source=str(manifest_file))

    epochs = config.epochs
    if config.smoke:
        train = train[:SMOKE_TRAIN_EXAMPLES]
        epochs = SMOKE_EPOCHS

    _seed_everything(config.seed)
    tokenizer, model = _load_checkpoint(config)
    device = _device()
    model.to(device)
    try:
        _train(model, tokenizer, train, config, device, epochs)
        scores = _predict_scores(model, tokenizer, test, config, device)
    except (RuntimeError, MemoryError) as exc:
        if isinstance(exc, torch.cuda.OutOfMemoryError) or _looks_like_oom(exc):
            raise OutOfMemory(
                config.batch_size, max(1, config.batch_size // 2), detail=str(exc)[:200]
            ) from exc
        raise

    y_true = [e.label for e in test]
    y_pred = [1 if s > 0.0 else 0 for s in scores]
    cm = confusion_counts(y_true, y_pred)
    acc = accuracy(cm)
    precision, recall, f1 = precision_recall_f1(cm, RECORD_AVERAGING)
    auc = roc_auc(y_true, scores)
    runtime_ms = int((time.perf_counter() - t0) * 1000)

    record = build_record(
        DISPLAY_NAMES[config.model_id],
        split_seed=manifest.seed,
        train_fraction=manifest.train_fraction,
        averaging=RECORD_AVERAGING,
        accuracy=acc,
        precision=precision,
        recall=recall,
        f1=f1,
        auc=auc,
        cm=cm,
        runtime_ms=runtime_ms,
    )
    out_path = Path(out_dir) / f"transformer_{config.model_id}_seed{config.seed}.json"
    path = write_record(record, out_path)
    return FinetuneResult(model_id=config.model_id, record=record, path=path)


def run_all(
    train_file: str | Path,
    test_file: str | Path,
    manifest_file: str | Path,
    out_dir: str | Path,
    *,
    configs: dict[str, FinetuneConfig] | None = None,
    smoke: bool = False,
    seed: int = 42,
) -> RunAllResult:
    """Fine-tune every supported model sequentially on the same split.

    Each model runs in isolation: a failure is recorded under its model
    id and the remaining models still run. configs, when given, replaces
    the default per-model configuration (keys must be known model ids and
    each value's model_id must match its key).
    """
    if configs is None:
        configs = {
            m: FinetuneConfig(model_id=m, seed=seed, smoke=smoke) for m in MODEL_IDS
        }
    else:
        unknown = sorted(set(configs) - set(MODEL_IDS))
        if unknown:
            raise ValidationError(f"unknown model ids in configs: {unknown}")
        for model_id, cfg in configs.items():
            if cfg.model_id != model_id:
                raise ValidationError(
                    f"configs[{model_id!r}] has model_id {cfg.model_id!r}"
                )
    results: list[FinetuneResult] = []
    failures: dict[str, str] = {}
    for model_id in MODEL_IDS:
        if model_id not in configs:
            continue
        try:
            results.append(
                finetune_and_evaluate(
                    train_file, test_file, manifest_file, configs[model_id], out_dir
                )
            )
        except Exception as exc:
            failures[model_id] = f"{type(exc).__name__}: {exc}"
    return RunAllResult(results=tuple(results), failures=failures)
