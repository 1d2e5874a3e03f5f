"""N-gram TF-IDF feature extraction.

Terms are space-joined token n-grams. Fitting ranks terms by total
occurrence count across the corpus (ties broken by the term string
ascending), keeps the top ``max_features``, then assigns indices in
lexicographic order so the vocabulary layout is reproducible from the
term set alone.

Term frequency is the raw count divided by the number of n-grams in the
document. Two inverse-document-frequency modes are supported:

    paper_exact:  idf(t) = ln(N / df(t))
    smoothed:     idf(t) = ln((1 + N) / (1 + df(t))) + 1

where N counts every fitted document, empty ones included. Vectors are
optionally L2-normalized after weighting.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .errors import ValidationError
from .textprep import TokenSequence


class EmptyVocabulary(ValidationError):
    pass


class IdfMode(str, Enum):
    PAPER_EXACT = "paper_exact"
    SMOOTHED = "smoothed"

    @classmethod
    def parse(cls, raw: str) -> "IdfMode":
        try:
            return cls(raw.strip().lower())
        except ValueError:
            raise ValidationError(f"unknown idf mode: {raw!r}") from None


@dataclass(frozen=True)
class NgramRange:
    lo: int
    hi: int

    def __post_init__(self) -> None:
        if self.lo < 1 or self.hi < self.lo:
            raise ValidationError(f"bad n-gram range ({self.lo}, {self.hi})")


@dataclass(frozen=True)
class VectorizerConfig:
    ngram_min: int = 2
    ngram_max: int = 2
    max_features: int = 1000
    idf_mode: IdfMode = IdfMode.SMOOTHED
    l2_normalize: bool = True

    def __post_init__(self) -> None:
        NgramRange(self.ngram_min, self.ngram_max)
        if self.max_features < 1:
            raise ValidationError(f"max_features must be positive, got {self.max_features}")
        if not isinstance(self.idf_mode, IdfMode):
            object.__setattr__(self, "idf_mode", IdfMode.parse(str(self.idf_mode)))

    @property
    def ngram_range(self) -> NgramRange:
        return NgramRange(self.ngram_min, self.ngram_max)

    def fingerprint(self) -> str:
        """Canonical one-line identity of the feature space."""
        return (
            f"ngram={self.ngram_min}:{self.ngram_max},max_features={self.max_features},"
            f"idf={self.idf_mode.value},l2={str(self.l2_normalize).lower()}"
        )


def extract_ngrams(tokens: TokenSequence, ngram_range: NgramRange) -> tuple[str, ...]:
    """All n-grams for n in [lo, hi], grouped by ascending n, each group
    in document order. N-grams are tokens joined by single spaces."""
    grams: list[str] = []
    for n in range(ngram_range.lo, ngram_range.hi + 1):
        for i in range(len(tokens) - n + 1):
            grams.append(" ".join(tokens[i : i + n]))
    return tuple(grams)


@dataclass(frozen=True)
class Vocabulary:
    """Fitted term set: ``terms`` in lexicographic order, aligned ``df``
    document frequencies, and the fitted corpus size ``n_docs``."""

    terms: tuple[str, ...]
    df: tuple[int, ...]
    n_docs: int

    def __post_init__(self) -> None:
        if not self.terms:
            raise EmptyVocabulary("vocabulary has no terms")
        if len(self.terms) != len(self.df):
            raise ValidationError("terms and df lengths differ")

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def index(self) -> dict[str, int]:
        cached = self.__dict__.get("_index")
        if cached is None:
            cached = {t: i for i, t in enumerate(self.terms)}
            self.__dict__["_index"] = cached
        return cached


def fit_vocabulary(docs: Sequence[TokenSequence], config: VectorizerConfig) -> Vocabulary:
    """Select the top ``max_features`` terms by total count and freeze
    them in lexicographic order with their document frequencies."""
    total: Counter[str] = Counter()
    df: Counter[str] = Counter()
    for tokens in docs:
        grams = extract_ngrams(tokens, config.ngram_range)
        total.update(grams)
        df.update(set(grams))
    if not total:
        raise EmptyVocabulary("no n-grams found in any document")
    ranked = sorted(total, key=lambda t: (-total[t], t))
    kept = sorted(ranked[: config.max_features])
    return Vocabulary(
        terms=tuple(kept),
        df=tuple(df[t] for t in kept),
        n_docs=len(docs),
    )


@dataclass(frozen=True)
class IdfTable:
    weights: tuple[float, ...]
    mode: IdfMode

    @classmethod
    def from_vocabulary(cls, vocab: Vocabulary, mode: IdfMode) -> "IdfTable":
        n = vocab.n_docs
        if mode is IdfMode.PAPER_EXACT:
            weights = tuple(math.log(n / d) for d in vocab.df)
        else:
            weights = tuple(math.log((1 + n) / (1 + d)) + 1.0 for d in vocab.df)
        return cls(weights=weights, mode=mode)


@dataclass(frozen=True)
class FeatureVector:
    """Sparse vector: strictly increasing ``indices`` with aligned
    nonzero ``values``, in a space of ``dim`` features."""

    indices: tuple[int, ...]
    values: tuple[float, ...]
    dim: int

    def to_dense(self) -> list[float]:
        dense = [0.0] * self.dim
        for i, v in zip(self.indices, self.values):
            dense[i] = v
        return dense

    def norm(self) -> float:
        return math.sqrt(sum(v * v for v in self.values))


def transform(
    tokens: TokenSequence,
    vocab: Vocabulary,
    idf: IdfTable,
    config: VectorizerConfig,
) -> FeatureVector:
    """TF-IDF weights for one document against a fitted vocabulary.

    The TF denominator is the document's total n-gram count for the
    configured range, so out-of-vocabulary grams still dilute weights.
    A document with no n-grams maps to the zero vector.
    """
    grams = extract_ngrams(tokens, config.ngram_range)
    dim = len(vocab)
    if not grams:
        return FeatureVector(indices=(), values=(), dim=dim)
    counts = Counter(grams)
    index = vocab.index
    entries = []
    total = len(grams)
    for term, count in counts.items():
        i = index.get(term)
        if i is not None:
            entries.append((i, (count / total) * idf.weights[i]))
    entries.sort()
    entries = [(i, v) for i, v in entries if v != 0.0]
    if config.l2_normalize and entries:
        norm = math.sqrt(sum(v * v for _, v in entries))
        if norm > 0.0:
            entries = [(i, v / norm) for i, v in entries]
    return FeatureVector(
        indices=tuple(i for i, _ in entries),
        values=tuple(v for _, v in entries),
        dim=dim,
    )


def transform_corpus(
    docs: Iterable[TokenSequence],
    vocab: Vocabulary,
    idf: IdfTable,
    config: VectorizerConfig,
) -> list[FeatureVector]:
    return [transform(tokens, vocab, idf, config) for tokens in docs]
