"""Shared fixtures: tiny local checkpoints and a real exported split.

Checkpoints are built in-process with small dimensions and a closed
vocabulary, so every fine-tuning test runs offline in seconds; the hub
is forced offline before transformers is imported. The split fixture
writes a synthetic review corpus and exports it through the classical
harness, so the files under test are byte-for-byte the format that
package produces.
"""

import os

os.environ.setdefault("HF_HUB_OFFLINE", "1")
os.environ.setdefault("TRANSFORMERS_VERBOSITY", "error")

import csv
import io
import random
from pathlib import Path

import pytest
import torch

try:
    from transformers.utils import logging as hf_logging
    hf_logging.disable_progress_bar()
except Exception:
    pass

WORDS = [
    "hotel", "room", "staff", "clean", "dirty", "luxury", "amazing", "terrible",
    "location", "service", "experience", "smelled", "view", "desk", "the", "was",
    "a", "my",
]

DECEPTIVE_FAVORED = ["luxury", "amazing", "experience", "view", "service", "my"]
TRUTHFUL_FAVORED = ["room", "staff", "desk", "location", "smelled", "the"]


def build_tiny_bert(path):
    from transformers import BertConfig, BertForSequenceClassification, BertTokenizer

    vocab = {"[PAD]": 0, "[UNK]": 1, "[CLS]": 2, "[SEP]": 3, "[MASK]": 4}
    for w in WORDS:
        vocab[w] = len(vocab)
    tok = BertTokenizer(vocab=vocab)
    tok.save_pretrained(path)
    cfg = BertConfig(
        vocab_size=len(tok), hidden_size=32, num_hidden_layers=2,
        num_attention_heads=2, intermediate_size=64,
        max_position_embeddings=64, num_labels=2,
    )
    BertForSequenceClassification(cfg).save_pretrained(path)
    return Path(path)


def build_tiny_distilbert(path):
    from transformers import (
        DistilBertConfig,
        DistilBertForSequenceClassification,
        DistilBertTokenizer,
    )

    vocab = {"[PAD]": 0, "[UNK]": 1, "[CLS]": 2, "[SEP]": 3, "[MASK]": 4}
    for w in WORDS:
        vocab[w] = len(vocab)
    tok = DistilBertTokenizer(vocab=vocab)
    tok.save_pretrained(path)
    cfg = DistilBertConfig(
        vocab_size=len(tok), dim=32, n_layers=2, n_heads=2, hidden_dim=64,
        max_position_embeddings=64, num_labels=2,
    )
    DistilBertForSequenceClassification(cfg).save_pretrained(path)
    return Path(path)


def build_tiny_roberta(path):
    from transformers import (
        RobertaConfig,
        RobertaForSequenceClassification,
        RobertaTokenizer,
    )

    # byte-level BPE; Ġ marks a leading space on a piece
    vocab = {"<s>": 0, "<pad>": 1, "</s>": 2, "<unk>": 3, "<mask>": 4}
    merges = []
    for w in WORDS:
        for form in (w, "Ġ" + w):
            for i in range(2, len(form) + 1):
                piece = form[:i]
                if piece not in vocab:
                    vocab[piece] = len(vocab)
                pair = (form[: i - 1], form[i - 1])
                if pair not in merges:
                    merges.append(pair)
        for ch in w:
            if ch not in vocab:
                vocab[ch] = len(vocab)
    if "Ġ" not in vocab:
        vocab["Ġ"] = len(vocab)
    tok = RobertaTokenizer(vocab=vocab, merges=merges)
    tok.save_pretrained(path)
    cfg = RobertaConfig(
        vocab_size=len(tok), hidden_size=32, num_hidden_layers=2,
        num_attention_heads=2, intermediate_size=64,
        max_position_embeddings=66, num_labels=2,
    )
    RobertaForSequenceClassification(cfg).save_pretrained(path)
    return Path(path)


def build_tiny_xlnet(path):
    from transformers import XLNetConfig, XLNetForSequenceClassification, XLNetTokenizer

    # unigram pieces with log-prob scores; ▁ marks a word boundary
    pieces = [("<unk>", 0.0)]
    pieces += [("▁" + w, -float(i + 2)) for i, w in enumerate(WORDS)]
    pieces += [(ch, -20.0) for ch in sorted({c for w in WORDS for c in w})]
    pieces.append(("▁", -19.0))
    tok = XLNetTokenizer(vocab=pieces, unk_id=0)
    tok.save_pretrained(path)
    cfg = XLNetConfig(
        vocab_size=len(tok), d_model=32, n_layer=2, n_head=2, d_inner=64,
        num_labels=2,
    )
    XLNetForSequenceClassification(cfg).save_pretrained(path)
    return Path(path)


BUILDERS = {
    "bert": build_tiny_bert,
    "roberta": build_tiny_roberta,
    "distilbert": build_tiny_distilbert,
    "xlnet": build_tiny_xlnet,
}


@pytest.fixture(scope="session")
def tiny_checkpoints(tmp_path_factory):
    torch.manual_seed(0)
    root = tmp_path_factory.mktemp("checkpoints")
    return {name: str(build(root / name)) for name, build in BUILDERS.items()}


def synth_corpus_csv(n_per_class=100, seed=11):
    """Review CSV in the classical harness's input format, with a mild
    lexical signal separating the classes."""
    rng = random.Random(seed)
    buffer = io.StringIO()
    writer = csv.writer(buffer)
    writer.writerow(["deceptive", "hotel", "polarity", "source", "text"])
    for label, favored in (("deceptive", DECEPTIVE_FAVORED), ("truthful", TRUTHFUL_FAVORED)):
        for i in range(n_per_class):
            length = rng.randint(8, 14)
            words = [
                rng.choice(favored) if rng.random() < 0.6 else rng.choice(WORDS)
                for _ in range(length)
            ]
            writer.writerow(
                [label, f"hotel{i % 7}", rng.choice(["positive", "negative"]),
                 "synthetic", " ".join(words)]
            )
    return buffer.getvalue()


@pytest.fixture(scope="session")
def split_files(tmp_path_factory):
    from deceptext.corpus import export_split, load_corpus, stratified_split

    root = tmp_path_factory.mktemp("split")
    csv_path = root / "reviews.csv"
    csv_path.write_text(synth_corpus_csv(), encoding="utf-8")
    corpus = load_corpus(csv_path)
    manifest = stratified_split(corpus, 0.8, 42)
    train_path, test_path, manifest_path = export_split(corpus, manifest, root / "export")
    return {
        "corpus": csv_path,
        "train": train_path,
        "test": test_path,
        "manifest": manifest_path,
    }
