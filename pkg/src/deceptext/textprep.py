"""Deterministic text normalization and tokenization.

Pipeline order: lowercase + URL removal + punctuation stripping
(:func:`normalize`), whitespace tokenization, stopword removal against a
versioned shipped list, then rule-based suffix stemming. Everything here
is a pure function of its inputs; tokens are plain lowercase strings.

URL rule: any maximal non-whitespace run beginning with ``http://``,
``https://``, or ``www.`` is deleted whole. Every other character that is
not a letter, digit, or whitespace becomes a space, and whitespace runs
collapse to single spaces.

Stemming applies an ordered suffix-rule table, first match wins, repeated
to a fixed point so the result is idempotent:

    ies -> y | ied -> y | ying -> y
    ing -> ""  (only if >= 3 letters remain; doubled consonant undoubled)
    ed  -> ""  (same guard)
    es  -> ""  (only if >= 3 letters remain)
    s   -> ""  (same guard, and not after another "s")
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .errors import ValidationError

TokenSequence = tuple[str, ...]

DEFAULT_STOPWORD_LIST = "default-en-127"

_STOPWORD_FILES = {DEFAULT_STOPWORD_LIST: "stopwords-en-127.txt"}

_URL_RE = re.compile(r"(?<!\S)(?:https?://|www\.)\S*")
_NON_ALNUM_RE = re.compile(r"[\W_]")

_VOWELS = frozenset("aeiou")

# (suffix, replacement, min stem length, undouble final consonant)
_SUFFIX_RULES: tuple[tuple[str, str, int, bool], ...] = (
    ("ies", "y", 0, False),
    ("ied", "y", 0, False),
    ("ying", "y", 0, False),
    ("ing", "", 3, True),
    ("ed", "", 3, True),
    ("es", "", 3, False),
    ("s", "", 3, False),
)


class UnknownStopwordList(ValidationError):
    pass


@dataclass(frozen=True)
class PrepConfig:
    remove_stopwords: bool = True
    lemmatize: bool = True
    stopword_list_id: str = DEFAULT_STOPWORD_LIST


def normalize(text: str) -> str:
    """Lowercase, delete URLs, strip punctuation, collapse whitespace."""
    lowered = text.lower()
    without_urls = _URL_RE.sub("", lowered)
    spaced = _NON_ALNUM_RE.sub(" ", without_urls)
    return " ".join(spaced.split())


def tokenize(text: str) -> TokenSequence:
    """Split normalized text on whitespace, dropping empty tokens."""
    return tuple(text.split())


@lru_cache(maxsize=None)
def stopword_set(list_id: str) -> frozenset[str]:
    if list_id not in _STOPWORD_FILES:
        raise UnknownStopwordList(f"unknown stopword list: {list_id!r}")
    data = (
        resources.files("deceptext.data")
        .joinpath(_STOPWORD_FILES[list_id])
        .read_text(encoding="utf-8")
    )
    words = []
    for line in data.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            words.append(line)
    return frozenset(words)


def remove_stopwords(tokens: TokenSequence, list_id: str = DEFAULT_STOPWORD_LIST) -> TokenSequence:
    stopwords = stopword_set(list_id)
    return tuple(t for t in tokens if t not in stopwords)


def _apply_first_rule(token: str) -> str:
    for suffix, replacement, min_stem, undouble in _SUFFIX_RULES:
        if not token.endswith(suffix):
            continue
        stem = token[: len(token) - len(suffix)]
        if len(stem) < min_stem:
            continue
        if suffix == "s" and stem.endswith("s"):
            continue
        if undouble and len(stem) >= 2 and stem[-1] == stem[-2] and stem[-1] not in _VOWELS:
            stem = stem[:-1]
        return stem + replacement
    return token


def lemmatize(token: str) -> str:
    """Reduce a token to its base form via the suffix-rule table.

    Each pass fires the first matching rule; passes repeat until nothing
    changes, which makes the function idempotent.
    """
    current = token
    while True:
        reduced = _apply_first_rule(current)
        if reduced == current:
            return current
        current = reduced


def preprocess(text: str, config: PrepConfig = PrepConfig()) -> TokenSequence:
    """normalize -> tokenize -> stopword removal -> stemming, per config."""
    tokens = tokenize(normalize(text))
    if config.remove_stopwords:
        tokens = remove_stopwords(tokens, config.stopword_list_id)
    if config.lemmatize:
        tokens = tuple(lemmatize(t) for t in tokens)
    return tokens
