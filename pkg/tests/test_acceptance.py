"""Acceptance gate. Each test prints one PASS/FAIL line per criterion
on the real stdout (bypassing capture) so the suite doubles as a
checklist. Benchmark-reproduction criteria need the review dataset CSV;
when it is absent they fail with an explanation instead of skipping,
because a skipped gate is not a passed gate.

Oracle checks are implemented here from first principles rather than
imported, so a bug in the library cannot hide inside its own oracle."""

from __future__ import annotations

import json
import math
import os
import sys
import time
from dataclasses import replace
from pathlib import Path

import numpy as np
import pytest

from deceptext.classifiers import (
    ALL_KINDS,
    Hyperparams,
    ModelKind,
    fit,
    logistic_loss_grad,
    pa_step,
    to_csr,
)
from deceptext.corpus import Corpus, load_corpus
from deceptext.evaluation import ConfusionMatrix, Averaging, accuracy, prf_metrics, roc_auc
from deceptext.harness import (
    ExperimentConfig,
    ModelSpec,
    SplitConfig,
    grid_search,
    grid_table_csv,
    load_model,
    metrics_record,
    render_record,
    run_experiment_on,
    save_model,
    train_bundle,
)
from deceptext.rng import SplitMix64
from deceptext.vectorizer import (
    EmptyVocabulary,
    FeatureVector,
    IdfMode,
    IdfTable,
    VectorizerConfig,
    fit_vocabulary,
    transform_corpus,
)

from conftest import synth_reviews

DATASET_ENV = "DECEPTEXT_DATASET"
DATASET_DEFAULT = Path(__file__).resolve().parents[1] / "data" / "deceptive-opinion.csv"

REFERENCE_ACCURACY = {"PA": 0.905, "LSVM": 0.901, "SVM": 0.895, "LR": 0.878, "NB": 0.867}
REFERENCE_AUC = {"PA": 0.9754, "LSVM": 0.9634, "SVM": 0.9598, "LR": 0.9104, "NB": 0.9456}
ACC_BAND = 0.03
AUC_BAND = 0.04


ACCEPTANCE_LINES: list[str] = []


def _line(name: str, ok: bool, detail: str = "") -> bool:
    status = "PASS" if ok else "FAIL"
    suffix = f"  ({detail})" if detail else ""
    text = f"[acceptance] {status}  {name}{suffix}"
    ACCEPTANCE_LINES.append(text)
    print(text, file=sys.__stdout__, flush=True)
    return ok


def _dataset_path() -> Path | None:
    override = os.environ.get(DATASET_ENV)
    candidate = Path(override) if override else DATASET_DEFAULT
    return candidate if candidate.is_file() else None


def _benchmark_bundle(corpus):
    config = ExperimentConfig(dataset_path="<in-memory>")
    return run_experiment_on(corpus, config)


_BENCH_CACHE: dict = {}


def _benchmark(path: Path):
    key = str(path)
    if key not in _BENCH_CACHE:
        corpus = load_corpus(path)
        started = time.perf_counter()
        bundle = _benchmark_bundle(corpus)
        _BENCH_CACHE[key] = (bundle, time.perf_counter() - started)
    return _BENCH_CACHE[key]


# ------------------------------------------------- benchmark reproduction


def test_accuracy_and_auc_within_published_bands():
    path = _dataset_path()
    if path is None:
        _line(
            "benchmark-reproduction",
            False,
            f"dataset CSV not found at {DATASET_DEFAULT} and {DATASET_ENV} unset; "
            "place the 1600-review hotel corpus there to run this criterion",
        )
        pytest.fail("benchmark dataset unavailable; criterion cannot be evaluated")
    bundle, elapsed = _benchmark(path)
    means = {row.model_name: (row.mean_accuracy, row.mean_auc) for row in bundle.aggregates}
    problems = []
    for name, want_acc in REFERENCE_ACCURACY.items():
        acc, auc = means[name]
        if abs(acc - want_acc) > ACC_BAND:
            problems.append(f"{name} accuracy {acc:.3f} vs {want_acc:.3f}")
        if abs(auc - REFERENCE_AUC[name]) > AUC_BAND:
            problems.append(f"{name} AUC {auc:.4f} vs {REFERENCE_AUC[name]:.4f}")
    detail = "; ".join(problems) if problems else (
        "all five models in band, 5 seeds, " + f"{elapsed:.1f}s"
    )
    ok = _line("benchmark-reproduction", not problems, detail)
    assert ok, detail


def test_model_ordering_matches_reference():
    path = _dataset_path()
    if path is None:
        _line(
            "model-ordering",
            False,
            f"dataset CSV not found at {DATASET_DEFAULT} and {DATASET_ENV} unset",
        )
        pytest.fail("benchmark dataset unavailable; criterion cannot be evaluated")
    bundle, _ = _benchmark(path)
    means = {row.model_name: row.mean_accuracy for row in bundle.aggregates}
    ok = means["PA"] > means["NB"] and means["LSVM"] > means["NB"]
    detail = f"PA {means['PA']:.3f}, LSVM {means['LSVM']:.3f}, NB {means['NB']:.3f}"
    _line("model-ordering", ok, detail)
    assert ok, detail


# --------------------------------------------------------- oracle suites


def test_oracle_tfidf_brute_force():
    words = "hotel room staff night clean bed view desk price floor".split()
    rng = SplitMix64(9001)
    failures = 0
    checked = 0
    while checked < 200:
        docs = [
            tuple(words[rng.next_below(len(words))] for _ in range(rng.next_below(9)))
            for _ in range(1 + rng.next_below(5))
        ]
        lo = 1 + rng.next_below(2)
        config = VectorizerConfig(
            ngram_min=lo,
            ngram_max=lo + rng.next_below(2),
            max_features=1 + rng.next_below(10),
            idf_mode=IdfMode.PAPER_EXACT if rng.next_below(2) else IdfMode.SMOOTHED,
            l2_normalize=bool(rng.next_below(2)),
        )
        try:
            vocab = fit_vocabulary(docs, config)
        except EmptyVocabulary:
            continue
        checked += 1
        idf = IdfTable.from_vocabulary(vocab, config.idf_mode)
        vectors = transform_corpus(docs, vocab, idf, config)

        # reference: plain dictionaries, python floats, no shared code
        def grams(tokens):
            return [
                " ".join(tokens[i : i + n])
                for n in range(config.ngram_min, config.ngram_max + 1)
                for i in range(len(tokens) - n + 1)
            ]

        total: dict[str, int] = {}
        df: dict[str, int] = {}
        for tokens in docs:
            gs = grams(tokens)
            for g in gs:
                total[g] = total.get(g, 0) + 1
            for g in set(gs):
                df[g] = df.get(g, 0) + 1
        kept = sorted(sorted(total, key=lambda t: (-total[t], t))[: config.max_features])
        n = len(docs)
        ref_idf = {
            t: math.log(n / df[t])
            if config.idf_mode is IdfMode.PAPER_EXACT
            else math.log((1 + n) / (1 + df[t])) + 1.0
            for t in kept
        }
        if list(vocab.terms) != kept:
            failures += 1
            continue
        for tokens, fv in zip(docs, vectors):
            gs = grams(tokens)
            row = {
                t: (gs.count(t) / len(gs)) * ref_idf[t] for t in set(gs) if t in ref_idf
            }
            row = {t: v for t, v in row.items() if v != 0.0}
            if config.l2_normalize and row:
                norm = math.sqrt(sum(v * v for v in row.values()))
                row = {t: v / norm for t, v in row.items()}
            got = {vocab.terms[i]: v for i, v in zip(fv.indices, fv.values)}
            if set(got) != set(row) or any(abs(got[t] - row[t]) >= 1e-12 for t in row):
                failures += 1
                break
    ok = _line("oracle-tfidf-brute-force", failures == 0, f"200 corpora, {failures} mismatches")
    assert ok


def test_oracle_auc_pair_count():
    rng = np.random.default_rng(424242)
    mismatches = 0
    checked = 0
    while checked < 200:
        n = int(rng.integers(2, 201))
        y = rng.choice([-1.0, 1.0], size=n)
        if len(set(y.tolist())) < 2:
            continue
        checked += 1
        # coarse grid of score values forces plenty of exact ties
        scores = rng.choice(np.round(np.linspace(-1, 1, 7), 3), size=n)
        got = roc_auc(y.tolist(), scores.tolist())
        pos = scores[y == 1.0]
        neg = scores[y == -1.0]
        wins = (pos[:, None] > neg[None, :]).sum()
        ties = (pos[:, None] == neg[None, :]).sum()
        want = (float(wins) + 0.5 * float(ties)) / (len(pos) * len(neg))
        if got != want:
            mismatches += 1
    ok = _line("oracle-auc-pair-count", mismatches == 0, f"200 score sets, {mismatches} mismatches")
    assert ok


def test_oracle_logistic_gradient():
    rng = np.random.default_rng(314)
    rows = [
        FeatureVector(
            indices=tuple(range(4)), values=tuple(rng.normal(size=4).tolist()), dim=4
        )
        for _ in range(8)
    ]
    X = to_csr(rows)
    y = np.array([1.0, -1.0] * 4)
    lam = 0.05
    eps = 1e-5
    worst = 0.0
    for _ in range(10):
        point = rng.normal(scale=1.5, size=5)
        _, grad = logistic_loss_grad(point, X, y, lam)
        for j in range(5):
            up = point.copy()
            up[j] += eps
            dn = point.copy()
            dn[j] -= eps
            lu, _ = logistic_loss_grad(up, X, y, lam)
            ld, _ = logistic_loss_grad(dn, X, y, lam)
            numeric = (lu - ld) / (2 * eps)
            rel = abs(numeric - grad[j]) / max(abs(numeric), abs(grad[j]), 1e-8)
            worst = max(worst, rel)
    ok = _line("oracle-logistic-gradient", worst < 1e-4, f"worst rel err {worst:.2e}")
    assert ok


def test_oracle_pa_exact_correction():
    rng = np.random.default_rng(2718)
    w = np.zeros(6)
    b = 0.0
    C = 0.8
    violations = 0
    for _ in range(1000):
        nnz = int(rng.integers(1, 6))
        idx = tuple(sorted(rng.choice(6, size=nnz, replace=False).tolist()))
        val = tuple(rng.normal(size=nnz).tolist())
        y = int(rng.choice([-1, 1]))
        tau, b = pa_step(w, b, idx, val, y, C)
        if tau > C + 1e-15:
            violations += 1
        if 0.0 < tau < C:
            margin = y * (float(w[list(idx)] @ np.asarray(val)) + b)
            if abs(max(0.0, 1.0 - margin)) >= 1e-12:
                violations += 1
    ok = _line("oracle-pa-exact-correction", violations == 0, f"1000 steps, {violations} violations")
    assert ok


def test_oracle_kernel_xor():
    def fv2(a, b):
        return FeatureVector(indices=(0, 1), values=(float(a), float(b)), dim=2)

    points = [fv2(1, 1), fv2(2, 2), fv2(1, 2), fv2(2, 1)]
    labels = [1, 1, -1, -1]
    hp = Hyperparams(rbf_gamma=1.0)
    kernel = fit(ModelKind.KERNEL_SVM, points, labels, hp)
    linear = fit(ModelKind.LINEAR_SVM, points, labels)
    from deceptext.classifiers import predict

    k_acc = float(np.mean(predict(kernel, points) == np.asarray(labels, dtype=float)))
    l_acc = float(np.mean(predict(linear, points) == np.asarray(labels, dtype=float)))
    ok = _line(
        "oracle-kernel-xor", k_acc == 1.0 and l_acc <= 0.75, f"kernel {k_acc}, linear {l_acc}"
    )
    assert ok


def test_oracle_metric_identities():
    rng = np.random.default_rng(1618)
    bad = 0
    for _ in range(200):
        tp, fp, fn, tn = (int(v) for v in rng.integers(0, 40, size=4))
        if tp + fp + fn + tn == 0:
            tp = 1
        cm = ConfusionMatrix(tp=tp, fp=fp, fn=fn, tn=tn)
        if abs(accuracy(cm) - (tp + tn) / cm.total) >= 1e-12:
            bad += 1
        p, r, f1 = prf_metrics(cm, Averaging.POSITIVE_CLASS)
        want_f1 = 0.0 if p + r == 0 else 2 * p * r / (p + r)
        if abs(f1 - want_f1) >= 1e-12:
            bad += 1
    for _ in range(200):
        n = int(rng.integers(2, 50))
        y = rng.choice([-1, 1], size=n)
        if len(set(y.tolist())) < 2:
            continue
        s = rng.normal(size=n)
        base = roc_auc(y.tolist(), s.tolist())
        mapped = roc_auc(y.tolist(), (np.exp(s) + 3.0).tolist())
        if abs(base - mapped) >= 1e-12:
            bad += 1
    ok = _line("oracle-metric-identities", bad == 0, f"400 trials, {bad} failures")
    assert ok


# ------------------------------------------------------------ determinism


def test_determinism_byte_identical_metrics():
    corpus = Corpus(reviews=tuple(synth_reviews()), name="synthetic")
    config = ExperimentConfig(dataset_path="<in-memory>", split=SplitConfig(seeds=(42,)))
    renders = []
    for _ in range(2):
        bundle = run_experiment_on(corpus, config)
        chunks = []
        for report in bundle.reports:
            record = metrics_record(report, config.split.train_fraction)
            record["runtime_ms"] = 0
            chunks.append(render_record(record))
        renders.append("".join(chunks).encode("utf-8"))
    ok = renders[0] == renders[1]
    _line(
        "determinism-byte-identical",
        ok,
        "two runs, all metrics records identical with the wall-clock field zeroed",
    )
    assert ok


def test_determinism_save_load_rescore(tmp_path):
    corpus = Corpus(reviews=tuple(synth_reviews()), name="synthetic")
    config = ExperimentConfig(dataset_path="<in-memory>")
    probe = [r.text for r in synth_reviews(n_per_class=50, seed=314, doc_len=30)]
    worst = 0.0
    for kind in ALL_KINDS:
        bundle, _ = train_bundle(corpus, config, kind, seed=42, hp=Hyperparams(epochs=10))
        path = tmp_path / f"{kind.value}.json"
        save_model(bundle, path)
        loaded = load_model(path)
        for text in probe:
            worst = max(worst, abs(bundle.score_text(text) - loaded.score_text(text)))
    ok = worst <= 1e-12
    _line(
        "determinism-save-load",
        ok,
        f"5 kinds x 100 docs, max score drift {worst:.2e}",
    )
    assert ok


# ------------------------------------------------------------ grid report


def test_grid_report_fully_populated(tmp_path):
    corpus = Corpus(reviews=tuple(synth_reviews()), name="synthetic")
    csv_rows = ["deceptive,hotel,polarity,source,text"]
    for r in corpus.reviews:
        csv_rows.append(f"{r.label.value},{r.hotel},{r.polarity.value},{r.source},{r.text}")
    dataset = tmp_path / "synthetic.csv"
    dataset.write_text("\n".join(csv_rows) + "\n")
    config = ExperimentConfig(
        dataset_path=str(dataset),
        models=tuple(ModelSpec(k, Hyperparams(epochs=10)) for k in ALL_KINDS),
        split=SplitConfig(seeds=(42,)),
    )
    result = grid_search(config)
    keys = {(c.ngram_min, c.ngram_max, c.max_features) for c in result.cells}
    want = {(lo, hi, mf) for lo, hi in ((1, 1), (1, 2), (2, 2)) for mf in (1000, 5000, 10000, 25000)}
    table = grid_table_csv(result) if result.cells else ""
    populated = keys == want and not result.failures and "2,2,1000," in table
    _line(
        "grid-report",
        populated,
        f"{len(result.cells)}/12 cells, {len(result.failures)} failures, (2,2)x1000 present",
    )
    assert populated
