"""Confusion-matrix metrics and rank-based ROC-AUC.

The positive class is deceptive (+1). Precision, recall, and F1 come in
three averaging modes: positive-class only, macro (unweighted mean over
both classes), and weighted (mean over classes weighted by true-class
support). Any zero denominator yields 0 for that quantity, and F1 is 0
when precision + recall is 0, so every metric is a total function.

ROC-AUC is computed by sorting once and averaging the ranks of tied
scores, which equals the pairwise definition: the fraction of
(positive, negative) pairs where the positive scores higher, ties
counting one half.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .classifiers import SingleClass, TrainedModel, decision_scores
from .corpus import Label
from .errors import ValidationError
from .vectorizer import FeatureVector, VectorizerConfig


class LengthMismatch(ValidationError):
    pass


class Empty(ValidationError):
    pass


class Averaging(str, Enum):
    POSITIVE_CLASS = "positive_class"
    MACRO = "macro"
    WEIGHTED = "weighted"

    @classmethod
    def parse(cls, raw: str) -> "Averaging":
        try:
            return cls(raw.strip().lower())
        except ValueError:
            raise ValidationError(f"unknown averaging mode: {raw!r}") from None


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    fp: int
    fn: int
    tn: int

    def __post_init__(self) -> None:
        if min(self.tp, self.fp, self.fn, self.tn) < 0:
            raise ValidationError("confusion counts must be nonnegative")

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


@dataclass(frozen=True)
class EvalReport:
    """One model evaluated on one split. ``prf_by_mode`` carries
    (mode, precision, recall, f1) for all three averaging modes; the
    top-level fields hold the selected mode's values."""

    model_name: str
    feature_config: VectorizerConfig
    averaging: Averaging
    accuracy: float
    precision: float
    recall: float
    f1: float
    auc: float
    confusion: ConfusionMatrix
    split_seed: int
    runtime_ms: int
    prf_by_mode: tuple[tuple[str, float, float, float], ...] = ()


def _signs(labels: Sequence) -> list[int]:
    out = []
    for item in labels:
        if isinstance(item, Label):
            out.append(item.sign)
        elif item in (1, -1):
            out.append(int(item))
        else:
            raise ValidationError(f"label must be +1, -1, or a Label, got {item!r}")
    return out


def confusion(y_true: Sequence, y_pred: Sequence) -> ConfusionMatrix:
    if len(y_true) != len(y_pred):
        raise LengthMismatch(f"{len(y_true)} true labels vs {len(y_pred)} predictions")
    if not y_true:
        raise Empty("no instances to evaluate")
    t, p = _signs(y_true), _signs(y_pred)
    tp = sum(1 for a, b in zip(t, p) if a == 1 and b == 1)
    fp = sum(1 for a, b in zip(t, p) if a == -1 and b == 1)
    fn = sum(1 for a, b in zip(t, p) if a == 1 and b == -1)
    tn = sum(1 for a, b in zip(t, p) if a == -1 and b == -1)
    return ConfusionMatrix(tp=tp, fp=fp, fn=fn, tn=tn)


def _ratio(num: int, den: int) -> float:
    return num / den if den else 0.0


def _f1(p: float, r: float) -> float:
    return 2.0 * p * r / (p + r) if p + r else 0.0


def prf_metrics(cm: ConfusionMatrix, averaging: Averaging) -> tuple[float, float, float]:
    if cm.total == 0:
        raise Empty("empty confusion matrix")
    p_pos = _ratio(cm.tp, cm.tp + cm.fp)
    r_pos = _ratio(cm.tp, cm.tp + cm.fn)
    f_pos = _f1(p_pos, r_pos)
    if averaging is Averaging.POSITIVE_CLASS:
        return p_pos, r_pos, f_pos
    p_neg = _ratio(cm.tn, cm.tn + cm.fn)
    r_neg = _ratio(cm.tn, cm.tn + cm.fp)
    f_neg = _f1(p_neg, r_neg)
    if averaging is Averaging.MACRO:
        return (p_pos + p_neg) / 2, (r_pos + r_neg) / 2, (f_pos + f_neg) / 2
    n_pos = cm.tp + cm.fn
    n_neg = cm.tn + cm.fp
    n = n_pos + n_neg
    return (
        (n_pos * p_pos + n_neg * p_neg) / n,
        (n_pos * r_pos + n_neg * r_neg) / n,
        (n_pos * f_pos + n_neg * f_neg) / n,
    )


def prf_by_mode(cm: ConfusionMatrix) -> tuple[tuple[str, float, float, float], ...]:
    return tuple(
        (mode.value, *prf_metrics(cm, mode))
        for mode in (Averaging.POSITIVE_CLASS, Averaging.MACRO, Averaging.WEIGHTED)
    )


def accuracy(cm: ConfusionMatrix) -> float:
    if cm.total == 0:
        raise Empty("empty confusion matrix")
    return (cm.tp + cm.tn) / cm.total


def roc_auc(y_true: Sequence, scores: Sequence[float]) -> float:
    """Average-rank AUC. Ranks are 1-based; tied scores share the mean
    of the ranks they span, which credits each tied positive-negative
    pair exactly 0.5."""
    if len(y_true) != len(scores):
        raise LengthMismatch(f"{len(y_true)} labels vs {len(scores)} scores")
    if not y_true:
        raise Empty("no instances to rank")
    y = _signs(y_true)
    for s in scores:
        if not math.isfinite(s):
            raise ValidationError(f"score is not finite: {s!r}")
    n_pos = sum(1 for v in y if v == 1)
    n_neg = len(y) - n_pos
    if n_pos == 0 or n_neg == 0:
        raise SingleClass("both classes must be present to compute AUC")
    order = sorted(range(len(scores)), key=lambda i: scores[i])
    ranks = [0.0] * len(scores)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and scores[order[j + 1]] == scores[order[i]]:
            j += 1
        avg = (i + 1 + j + 1) / 2.0
        for k in range(i, j + 1):
            ranks[order[k]] = avg
        i = j + 1
    rank_sum = sum(r for r, v in zip(ranks, y) if v == 1)
    return (rank_sum - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg)


def evaluate(
    model: TrainedModel,
    X_test: Sequence[FeatureVector],
    y_test: Sequence,
    averaging: Averaging = Averaging.WEIGHTED,
    *,
    feature_config: VectorizerConfig | None = None,
    split_seed: int = 0,
    runtime_ms: int = 0,
) -> EvalReport:
    """Score the test set once, derive hard labels by the sign rule
    (score > 0 means deceptive), and fill a complete report."""
    if not X_test:
        raise Empty("empty test set")
    y = _signs(y_test)
    scores = decision_scores(model, X_test).tolist()
    y_pred = [1 if s > 0.0 else -1 for s in scores]
    cm = confusion(y, y_pred)
    prec, rec, f1 = prf_metrics(cm, averaging)
    return EvalReport(
        model_name=model.kind.display,
        feature_config=feature_config if feature_config is not None else VectorizerConfig(),
        averaging=averaging,
        accuracy=accuracy(cm),
        precision=prec,
        recall=rec,
        f1=f1,
        auc=roc_auc(y, scores),
        confusion=cm,
        split_seed=split_seed,
        runtime_ms=runtime_ms,
        prf_by_mode=prf_by_mode(cm),
    )
