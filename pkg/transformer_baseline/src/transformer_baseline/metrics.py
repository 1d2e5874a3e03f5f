"""Evaluation metrics over 0/1 labels.

Independent implementation of the five benchmark metrics (accuracy,
precision, recall, F1, ROC-AUC) kept arithmetically in lockstep with the
classical harness: same formulas, same operation order, same zero-denominator
and tie conventions. The cross-package fixture test asserts exact float
equality between the two implementations on shared inputs.

Labels are 1 (deceptive, positive) and 0 (truthful, negative). A decision
score that is exactly zero predicts the negative class.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import ValidationError

AVERAGING_MODES = ("positive_class", "macro", "weighted")


@dataclass(frozen=True)
class Confusion:
    tp: int
    fp: int
    fn: int
    tn: int

    def __post_init__(self) -> None:
        for name in ("tp", "fp", "fn", "tn"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 0:
                raise ValidationError(f"{name} must be a non-negative integer")

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


def _check_binary(labels: Sequence, name: str) -> list[int]:
    out = []
    for v in labels:
        if v not in (0, 1):
            raise ValidationError(f"{name} values must be 0 or 1, got {v!r}")
        out.append(int(v))
    return out


def confusion_counts(y_true: Sequence[int], y_pred: Sequence[int]) -> Confusion:
    if len(y_true) != len(y_pred):
        raise ValidationError(f"{len(y_true)} true labels vs {len(y_pred)} predictions")
    if not len(y_true):
        raise ValidationError("no instances to evaluate")
    t = _check_binary(y_true, "y_true")
    p = _check_binary(y_pred, "y_pred")
    tp = sum(1 for a, b in zip(t, p) if a == 1 and b == 1)
    fp = sum(1 for a, b in zip(t, p) if a == 0 and b == 1)
    fn = sum(1 for a, b in zip(t, p) if a == 1 and b == 0)
    tn = sum(1 for a, b in zip(t, p) if a == 0 and b == 0)
    return Confusion(tp=tp, fp=fp, fn=fn, tn=tn)


def accuracy(cm: Confusion) -> float:
    if cm.total == 0:
        raise ValidationError("empty confusion matrix")
    return (cm.tp + cm.tn) / cm.total


def _ratio(num: int, den: int) -> float:
    return num / den if den else 0.0


def _f1(p: float, r: float) -> float:
    return 2.0 * p * r / (p + r) if p + r else 0.0


def precision_recall_f1(cm: Confusion, averaging: str) -> tuple[float, float, float]:
    """(precision, recall, f1) under the named averaging mode.

    Zero denominators yield 0.0 for the affected ratio. Weighted averaging
    weights each class by its true support.
    """
    if averaging not in AVERAGING_MODES:
        raise ValidationError(f"unknown averaging mode {averaging!r}")
    if cm.total == 0:
        raise ValidationError("empty confusion matrix")
    p_pos = _ratio(cm.tp, cm.tp + cm.fp)
    r_pos = _ratio(cm.tp, cm.tp + cm.fn)
    f_pos = _f1(p_pos, r_pos)
    if averaging == "positive_class":
        return p_pos, r_pos, f_pos
    p_neg = _ratio(cm.tn, cm.tn + cm.fn)
    r_neg = _ratio(cm.tn, cm.tn + cm.fp)
    f_neg = _f1(p_neg, r_neg)
    if averaging == "macro":
        return (p_pos + p_neg) / 2, (r_pos + r_neg) / 2, (f_pos + f_neg) / 2
    n_pos = cm.tp + cm.fn
    n_neg = cm.tn + cm.fp
    n = n_pos + n_neg
    return (
        (n_pos * p_pos + n_neg * p_neg) / n,
        (n_pos * r_pos + n_neg * r_neg) / n,
        (n_pos * f_pos + n_neg * f_neg) / n,
    )


def roc_auc(y_true: Sequence[int], scores: Sequence[float]) -> float:
    """Average-rank AUC with tied scores sharing the mean of their ranks,
    so each tied positive-negative pair counts exactly 0.5."""
    if len(y_true) != len(scores):
        raise ValidationError(f"{len(y_true)} labels vs {len(scores)} scores")
    if not len(y_true):
        raise ValidationError("no instances to rank")
    y = _check_binary(y_true, "y_true")
    for s in scores:
        if not math.isfinite(s):
            raise ValidationError(f"score is not finite: {s!r}")
    n_pos = sum(y)
    n_neg = len(y) - n_pos
    if n_pos == 0 or n_neg == 0:
        raise ValidationError("both classes must be present to compute AUC")
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
