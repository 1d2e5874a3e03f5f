"""Binary classifiers trained from scratch on sparse TF-IDF vectors.

Labels are +1 (deceptive) and -1 (truthful). Five trainers share one
entry point, :func:`fit`:

    lr    logistic regression, full-batch gradient descent on the mean
          log-loss plus (lambda/2)*||w||^2 (bias unregularized)
    lsvm  linear SVM via the Pegasos stochastic subgradient method,
          step size 1/(lambda*t)
    pa    passive-aggressive (PA-I) with the bias folded in as an
          always-on unit feature, tau = min(C, loss/(||x||^2 + 1))
    nb    multinomial naive Bayes with Laplace smoothing over the
          fractional TF-IDF counts
    svm   kernelized Pegasos with an RBF kernel
          K(u, v) = exp(-gamma * ||u - v||^2)

Stochastic trainers visit examples in per-epoch shuffled order drawn
from one deterministic generator stream, so a (data, hyperparams) pair
always yields the same model. scipy.sparse supplies the matrix algebra;
every update rule is written out here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np
from scipy import sparse
from scipy.special import expit

from .errors import RuntimeFailure, ValidationError
from .rng import SplitMix64
from .vectorizer import FeatureVector


class SingleClass(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class NegativeFeature(ValidationError):
    pass


class ModelKind(str, Enum):
    LOGISTIC = "lr"
    LINEAR_SVM = "lsvm"
    PASSIVE_AGGRESSIVE = "pa"
    NAIVE_BAYES = "nb"
    KERNEL_SVM = "svm"

    @property
    def display(self) -> str:
        return self.value.upper()

    @classmethod
    def parse(cls, raw: str) -> "ModelKind":
        try:
            return cls(raw.strip().lower())
        except ValueError:
            raise ValidationError(f"unknown model kind: {raw!r}") from None


ALL_KINDS: tuple[ModelKind, ...] = (
    ModelKind.LOGISTIC,
    ModelKind.LINEAR_SVM,
    ModelKind.PASSIVE_AGGRESSIVE,
    ModelKind.NAIVE_BAYES,
    ModelKind.KERNEL_SVM,
)


@dataclass(frozen=True)
class Hyperparams:
    epochs: int = 50
    learning_rate: float = 0.1
    l2_lambda: float = 1e-4
    pa_C: float = 1.0
    nb_alpha: float = 1.0
    rbf_gamma: float | None = None
    shuffle_seed: int = 42

    def __post_init__(self) -> None:
        if self.epochs < 1:
            raise ValidationError(f"epochs must be positive, got {self.epochs}")
        if self.learning_rate <= 0 or self.l2_lambda <= 0:
            raise ValidationError("learning_rate and l2_lambda must be positive")
        if self.pa_C <= 0 or self.nb_alpha <= 0:
            raise ValidationError("pa_C and nb_alpha must be positive")
        if self.rbf_gamma is not None and self.rbf_gamma <= 0:
            raise ValidationError(f"rbf_gamma must be positive, got {self.rbf_gamma}")


@dataclass(frozen=True)
class LinearParams:
    weights: tuple[float, ...]
    bias: float


@dataclass(frozen=True)
class NaiveBayesParams:
    log_prior_pos: float
    log_prior_neg: float
    log_lik_pos: tuple[float, ...]
    log_lik_neg: tuple[float, ...]


@dataclass(frozen=True)
class KernelParams:
    support: tuple[FeatureVector, ...]
    coefs: tuple[float, ...]
    bias: float
    gamma: float

    def __post_init__(self) -> None:
        if len(self.support) != len(self.coefs) or not self.support:
            raise ValidationError("kernel model needs aligned, nonempty support vectors")


@dataclass(frozen=True)
class TrainedModel:
    """Tagged union of the three parameter shapes, stamped with the
    training hyperparameters and the feature-space fingerprint the
    vectors came from (empty when trained on raw vectors)."""

    kind: ModelKind
    dim: int
    params: LinearParams | NaiveBayesParams | KernelParams
    hyperparams: Hyperparams = Hyperparams()
    fingerprint: str = ""


def to_csr(vectors: Sequence[FeatureVector], dim: int | None = None) -> sparse.csr_matrix:
    """Stack sparse feature vectors into one CSR matrix, checking that
    every vector lives in the same feature space."""
    if not vectors:
        raise ValidationError("no feature vectors given")
    if dim is None:
        dim = vectors[0].dim
    indptr = [0]
    indices: list[int] = []
    data: list[float] = []
    for fv in vectors:
        if fv.dim != dim:
            raise DimensionMismatch(f"vector dim {fv.dim} != expected {dim}")
        indices.extend(fv.indices)
        data.extend(fv.values)
        indptr.append(len(indices))
    return sparse.csr_matrix(
        (np.array(data, dtype=np.float64), np.array(indices, dtype=np.int64), np.array(indptr, dtype=np.int64)),
        shape=(len(vectors), dim),
    )


def _check_labels(labels: Sequence[int]) -> np.ndarray:
    y = np.asarray(labels, dtype=np.float64)
    if y.size == 0 or not np.all(np.isin(y, (-1.0, 1.0))):
        raise ValidationError("labels must be +1 or -1")
    if np.all(y == y[0]):
        raise SingleClass("training data contains a single class")
    return y


def logistic_loss_grad(
    params: np.ndarray,
    X: sparse.csr_matrix,
    y: np.ndarray,
    l2_lambda: float,
) -> tuple[float, np.ndarray]:
    """Mean log-loss with L2 penalty on the weights, and its gradient.

    ``params`` is the weight vector with the bias appended as the last
    entry; the bias is excluded from the penalty.
    """
    w, b = params[:-1], params[-1]
    margins = y * (X @ w + b)
    loss = float(np.mean(np.logaddexp(0.0, -margins))) + 0.5 * l2_lambda * float(w @ w)
    dz = -(y * expit(-margins)) / y.size
    grad_w = X.T @ dz + l2_lambda * w
    grad_b = float(np.sum(dz))
    return loss, np.concatenate([grad_w, [grad_b]])


def fit_logistic(X: sparse.csr_matrix, y: np.ndarray, hp: Hyperparams) -> LinearParams:
    params = np.zeros(X.shape[1] + 1)
    for _ in range(hp.epochs):
        _, grad = logistic_loss_grad(params, X, y, hp.l2_lambda)
        params -= hp.learning_rate * grad
    return LinearParams(weights=tuple(params[:-1].tolist()), bias=float(params[-1]))


def fit_linear_svm(X: sparse.csr_matrix, y: np.ndarray, hp: Hyperparams) -> LinearParams:
    """Pegasos: at step t visit one example with step size 1/(lambda*t);
    shrink (w, b) by (1 - eta*lambda) and, on margin violation, add
    eta * y * x to w and eta * y to b."""
    n, d = X.shape
    w = np.zeros(d)
    b = 0.0
    lam = hp.l2_lambda
    rng = SplitMix64(hp.shuffle_seed)
    order = list(range(n))
    t = 0
    for _ in range(hp.epochs):
        rng.shuffle(order)
        for i in order:
            t += 1
            eta = 1.0 / (lam * t)
            row = X.getrow(i)
            margin = y[i] * (row @ w + b)[0]
            shrink = 1.0 - eta * lam
            w *= shrink
            b *= shrink
            if margin < 1.0:
                w[row.indices] += eta * y[i] * row.data
                b += eta * y[i]
    return LinearParams(weights=tuple(w.tolist()), bias=b)


def pa_step(
    w: np.ndarray,
    b: float,
    indices: Sequence[int],
    values: Sequence[float],
    y: int,
    C: float,
) -> tuple[float, float]:
    """One PA-I update on (w, b) for a sparse example. Mutates ``w`` and
    returns (tau, new bias). The bias rides along as a constant unit
    feature, hence the +1 in the step-size denominator."""
    idx = np.asarray(indices, dtype=np.int64)
    val = np.asarray(values, dtype=np.float64)
    margin = y * (float(w[idx] @ val) + b)
    loss = max(0.0, 1.0 - margin)
    if loss == 0.0:
        return 0.0, b
    tau = min(C, loss / (float(val @ val) + 1.0))
    w[idx] += tau * y * val
    return tau, b + tau * y


def fit_passive_aggressive(X: sparse.csr_matrix, y: np.ndarray, hp: Hyperparams) -> LinearParams:
    n, d = X.shape
    w = np.zeros(d)
    b = 0.0
    rng = SplitMix64(hp.shuffle_seed)
    order = list(range(n))
    for _ in range(hp.epochs):
        rng.shuffle(order)
        for i in order:
            row = X.getrow(i)
            if row.nnz == 0:
                continue
            _, b = pa_step(w, b, row.indices, row.data, int(y[i]), hp.pa_C)
    return LinearParams(weights=tuple(w.tolist()), bias=b)


def fit_multinomial_nb(X: sparse.csr_matrix, y: np.ndarray, hp: Hyperparams) -> NaiveBayesParams:
    """Multinomial model over fractional feature mass: per class c and
    feature j, theta_cj = (alpha + sum of x_j over c) / (alpha*d + total
    mass in c), with priors from class document counts."""
    if X.nnz and X.data.min() < 0:
        raise NegativeFeature("naive Bayes requires nonnegative features")
    n, d = X.shape
    alpha = hp.nb_alpha
    out: dict[float, tuple[float, np.ndarray]] = {}
    for cls in (1.0, -1.0):
        mask = y == cls
        count = int(mask.sum())
        mass = np.asarray(X[mask].sum(axis=0)).ravel()
        theta = (alpha + mass) / (alpha * d + mass.sum())
        out[cls] = (math.log(count / n), np.log(theta))
    return NaiveBayesParams(
        log_prior_pos=out[1.0][0],
        log_prior_neg=out[-1.0][0],
        log_lik_pos=tuple(out[1.0][1].tolist()),
        log_lik_neg=tuple(out[-1.0][1].tolist()),
    )


def rbf_gram(A: sparse.csr_matrix, B: sparse.csr_matrix, gamma: float) -> np.ndarray:
    """Dense kernel matrix K[i, j] = exp(-gamma * ||A_i - B_j||^2)."""
    sq_a = np.asarray(A.multiply(A).sum(axis=1)).ravel()
    sq_b = np.asarray(B.multiply(B).sum(axis=1)).ravel()
    cross = (A @ B.T).toarray()
    dist = np.maximum(sq_a[:, None] + sq_b[None, :] - 2.0 * cross, 0.0)
    return np.exp(-gamma * dist)


def fit_kernel_svm(X: sparse.csr_matrix, y: np.ndarray, hp: Hyperparams) -> KernelParams:
    """Kernelized Pegasos: alpha_i counts the margin violations charged
    to example i; the step-t decision value is
    y_i / (lambda * t) * sum_j alpha_j y_j (K(x_j, x_i) + 1), the +1
    playing the role of the linear trainer's bias term. The final bias
    is therefore the sum of the dual coefficients."""
    n, d = X.shape
    gamma = hp.rbf_gamma if hp.rbf_gamma is not None else 1.0 / d
    K = rbf_gram(X, X, gamma) + 1.0
    lam = hp.l2_lambda
    alpha = np.zeros(n)
    rng = SplitMix64(hp.shuffle_seed)
    order = list(range(n))
    t = 0
    for _ in range(hp.epochs):
        rng.shuffle(order)
        for i in order:
            t += 1
            margin = y[i] * float(K[i] @ (alpha * y)) / (lam * t)
            if margin < 1.0:
                alpha[i] += 1.0
    coefs = alpha * y / (lam * t)
    keep = np.flatnonzero(alpha)
    support = tuple(
        FeatureVector(
            indices=tuple(int(j) for j in X.indices[X.indptr[i] : X.indptr[i + 1]]),
            values=tuple(float(v) for v in X.data[X.indptr[i] : X.indptr[i + 1]]),
            dim=d,
        )
        for i in keep
    )
    return KernelParams(
        support=support,
        coefs=tuple(coefs[keep].tolist()),
        bias=float(coefs[keep].sum()),
        gamma=gamma,
    )


def _check_finite(params: LinearParams | NaiveBayesParams | KernelParams) -> None:
    if isinstance(params, LinearParams):
        values = list(params.weights) + [params.bias]
    elif isinstance(params, NaiveBayesParams):
        values = (
            [params.log_prior_pos, params.log_prior_neg]
            + list(params.log_lik_pos)
            + list(params.log_lik_neg)
        )
    else:
        values = list(params.coefs) + [params.bias, params.gamma]
    if not np.all(np.isfinite(values)):
        raise RuntimeFailure("training produced non-finite parameters")


def fit(
    kind: ModelKind,
    vectors: Sequence[FeatureVector],
    labels: Sequence[int],
    hp: Hyperparams = Hyperparams(),
    fingerprint: str = "",
) -> TrainedModel:
    """Train one model kind; the returned bundle scores new vectors via
    :func:`decision_scores`."""
    X = to_csr(vectors)
    y = _check_labels(labels)
    if y.size != X.shape[0]:
        raise ValidationError(f"{X.shape[0]} vectors but {y.size} labels")
    if kind is ModelKind.LOGISTIC:
        params: LinearParams | NaiveBayesParams | KernelParams = fit_logistic(X, y, hp)
    elif kind is ModelKind.LINEAR_SVM:
        params = fit_linear_svm(X, y, hp)
    elif kind is ModelKind.PASSIVE_AGGRESSIVE:
        params = fit_passive_aggressive(X, y, hp)
    elif kind is ModelKind.NAIVE_BAYES:
        params = fit_multinomial_nb(X, y, hp)
    else:
        params = fit_kernel_svm(X, y, hp)
    _check_finite(params)
    return TrainedModel(
        kind=kind, dim=X.shape[1], params=params, hyperparams=hp, fingerprint=fingerprint
    )


def decision_scores(model: TrainedModel, vectors: Sequence[FeatureVector]) -> np.ndarray:
    """Real-valued scores, positive for the deceptive class."""
    X = to_csr(vectors, model.dim)
    p = model.params
    if isinstance(p, LinearParams):
        return X @ np.asarray(p.weights) + p.bias
    if isinstance(p, NaiveBayesParams):
        contrast = np.asarray(p.log_lik_pos) - np.asarray(p.log_lik_neg)
        return X @ contrast + (p.log_prior_pos - p.log_prior_neg)
    S = to_csr(p.support, model.dim)
    return rbf_gram(X, S, p.gamma) @ np.asarray(p.coefs) + p.bias


def decision_score(model: TrainedModel, fv: FeatureVector) -> float:
    return float(decision_scores(model, [fv])[0])


def predict(model: TrainedModel, vectors: Sequence[FeatureVector]) -> np.ndarray:
    """Hard labels in {+1, -1}; a score of exactly zero maps to -1."""
    scores = decision_scores(model, vectors)
    return np.where(scores > 0.0, 1.0, -1.0)
