"""Shared fixtures: a deterministic synthetic review corpus.

Documents are bags of words drawn from a class-specific pool mixed with
a shared pool, so the classes are learnable but overlap. Everything is
driven by the package's own generator, making fixtures identical on
every run and platform.
"""

from __future__ import annotations

import csv
import sys
import io
from pathlib import Path

import pytest

from deceptext.corpus import Corpus, Label, Polarity, Review
from deceptext.rng import SplitMix64

DECEPTIVE_POOL = (
    "luxury amazing wonderful fantastic incredible perfect dream elegant "
    "stunning gorgeous impeccable flawless magnificent exquisite paradise "
    "breathtaking divine splendid marvelous glamorous"
).split()

TRUTHFUL_POOL = (
    "parking elevator hallway receipt checkout luggage thermostat faucet "
    "carpet window shuttle invoice wifi towel pillow vending stairwell "
    "lobby counter keycard"
).split()

SHARED_POOL = (
    "hotel room staff night stay clean bed service breakfast location "
    "desk floor bathroom view price morning door area time place"
).split()


def synth_reviews(n_per_class: int = 60, seed: int = 7, doc_len: int = 40) -> tuple[Review, ...]:
    rng = SplitMix64(seed)
    reviews = []
    rid = 0
    for label, pool in ((Label.DECEPTIVE, DECEPTIVE_POOL), (Label.TRUTHFUL, TRUTHFUL_POOL)):
        for k in range(n_per_class):
            words = []
            for _ in range(doc_len):
                if rng.next_below(10) < 6:
                    words.append(pool[rng.next_below(len(pool))])
                else:
                    words.append(SHARED_POOL[rng.next_below(len(SHARED_POOL))])
            reviews.append(
                Review(
                    id=rid,
                    label=label,
                    hotel=f"hotel{rng.next_below(5)}",
                    polarity=Polarity.POSITIVE if k % 2 == 0 else Polarity.NEGATIVE,
                    source="synthetic",
                    text=" ".join(words),
                )
            )
            rid += 1
    return tuple(reviews)


def corpus_csv_text(corpus: Corpus) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["deceptive", "hotel", "polarity", "source", "text"])
    for r in corpus.reviews:
        writer.writerow([r.label.value, r.hotel, r.polarity.value, r.source, r.text])
    return buffer.getvalue()


@pytest.fixture(scope="session")
def synth_corpus() -> Corpus:
    return Corpus(reviews=synth_reviews(), name="synthetic")


@pytest.fixture(scope="session")
def small_corpus() -> Corpus:
    return Corpus(reviews=synth_reviews(n_per_class=15, seed=11, doc_len=25), name="small")


@pytest.fixture()
def synth_csv(tmp_path: Path, synth_corpus: Corpus) -> Path:
    path = tmp_path / "reviews.csv"
    path.write_text(corpus_csv_text(synth_corpus), encoding="utf-8")
    return path


@pytest.fixture()
def small_csv(tmp_path: Path, small_corpus: Corpus) -> Path:
    path = tmp_path / "small.csv"
    path.write_text(corpus_csv_text(small_corpus), encoding="utf-8")
    return path


def pytest_terminal_summary(terminalreporter):
    """Echo the acceptance checklist after the run so the per-criterion
    lines survive output capture."""
    lines = getattr(sys.modules.get("test_acceptance"), "ACCEPTANCE_LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
