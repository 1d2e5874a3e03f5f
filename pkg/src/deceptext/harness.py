"""Experiment runner and artifact plumbing.

Wires the full pipeline: load corpus, split per seed, preprocess, fit
vocabulary and IDF on the training half only, transform both halves,
train every configured model, and evaluate on the held-out half. A
RunBundle collects the per-(model, seed) reports plus per-model
mean/stddev aggregates recomputable from the reports.

Also here: the feature-settings grid sweep, single-file model
persistence with a content checksum, line-by-line prediction from a
saved model, report emission (per-run metrics JSON validated against
the shared schema, aggregate table CSV, tidy figure CSV), and the
merge-only comparison of classical and transformer metric files.

Failures inside a pipeline stage are re-raised with the stage named,
keeping the validation/runtime distinction for exit codes.
"""

from __future__ import annotations

import hashlib
import json
import math
import time
from contextlib import contextmanager
from dataclasses import dataclass, replace
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterator, Sequence

import jsonschema

from .classifiers import (
    ALL_KINDS,
    Hyperparams,
    KernelParams,
    LinearParams,
    ModelKind,
    NaiveBayesParams,
    TrainedModel,
    decision_scores,
    fit,
)
from .corpus import Corpus, Label, SplitManifest, load_corpus, stratified_split, write_atomic
from .errors import DeceptextError, IoFailure, RuntimeFailure, ValidationError
from .evaluation import Averaging, EvalReport, evaluate
from .textprep import PrepConfig, TokenSequence, preprocess
from .vectorizer import (
    FeatureVector,
    IdfMode,
    IdfTable,
    VectorizerConfig,
    Vocabulary,
    fit_vocabulary,
    transform,
    transform_corpus,
)

MODEL_FORMAT_VERSION = 1

DEFAULT_SEEDS: tuple[int, ...] = (42, 43, 44, 45, 46)
DEFAULT_TRAIN_FRACTION = 0.8
DEFAULT_GRID_NGRAMS: tuple[tuple[int, int], ...] = ((1, 1), (1, 2), (2, 2))
DEFAULT_GRID_MAX_FEATURES: tuple[int, ...] = (1000, 5000, 10000, 25000)

METRIC_NAMES: tuple[str, ...] = ("accuracy", "precision", "recall", "f1", "auc")


class UnsupportedVersion(ValidationError):
    pass


class CorruptFile(ValidationError):
    pass


class SchemaMismatch(ValidationError):
    pass


@contextmanager
def _stage(name: str) -> Iterator[None]:
    try:
        yield
    except DeceptextError as err:
        raise type(err)(f"[{name}] {err}") from err
    except Exception as err:
        raise RuntimeFailure(f"[{name}] {err}") from err


@dataclass(frozen=True)
class ModelSpec:
    kind: ModelKind
    hyperparams: Hyperparams = Hyperparams()


DEFAULT_MODELS: tuple[ModelSpec, ...] = tuple(ModelSpec(kind) for kind in ALL_KINDS)


@dataclass(frozen=True)
class SplitConfig:
    train_fraction: float = DEFAULT_TRAIN_FRACTION
    seeds: tuple[int, ...] = DEFAULT_SEEDS

    def __post_init__(self) -> None:
        if not self.seeds:
            raise ValidationError("at least one seed is required")


@dataclass(frozen=True)
class ExperimentConfig:
    dataset_path: str
    prep: PrepConfig = PrepConfig()
    vectorizer: VectorizerConfig = VectorizerConfig()
    models: tuple[ModelSpec, ...] = DEFAULT_MODELS
    split: SplitConfig = SplitConfig()
    averaging: Averaging = Averaging.WEIGHTED
    output_dir: str = "runs"

    def __post_init__(self) -> None:
        if not self.dataset_path:
            raise ValidationError("dataset_path is required")
        if not self.models:
            raise ValidationError("at least one model is required")
        kinds = [spec.kind for spec in self.models]
        if len(set(kinds)) != len(kinds):
            raise ValidationError("duplicate model kinds in config")


@dataclass(frozen=True)
class AggregateRow:
    """Per-model mean and population stddev of each metric over seeds."""

    model_name: str
    mean_accuracy: float
    std_accuracy: float
    mean_precision: float
    std_precision: float
    mean_recall: float
    std_recall: float
    mean_f1: float
    std_f1: float
    mean_auc: float
    std_auc: float


@dataclass(frozen=True)
class RunBundle:
    config: ExperimentConfig
    reports: tuple[EvalReport, ...]
    aggregates: tuple[AggregateRow, ...]


def _mean_std(values: Sequence[float]) -> tuple[float, float]:
    mean = sum(values) / len(values)
    var = sum((v - mean) ** 2 for v in values) / len(values)
    return mean, math.sqrt(var)


def aggregate_reports(config: ExperimentConfig, reports: Sequence[EvalReport]) -> tuple[AggregateRow, ...]:
    rows = []
    for spec in config.models:
        name = spec.kind.display
        mine = [r for r in reports if r.model_name == name]
        if not mine:
            raise RuntimeFailure(f"no reports for model {name}")
        stats = {m: _mean_std([getattr(r, m) for r in mine]) for m in METRIC_NAMES}
        rows.append(
            AggregateRow(
                model_name=name,
                mean_accuracy=stats["accuracy"][0],
                std_accuracy=stats["accuracy"][1],
                mean_precision=stats["precision"][0],
                std_precision=stats["precision"][1],
                mean_recall=stats["recall"][0],
                std_recall=stats["recall"][1],
                mean_f1=stats["f1"][0],
                std_f1=stats["f1"][1],
                mean_auc=stats["auc"][0],
                std_auc=stats["auc"][1],
            )
        )
    return tuple(rows)


def _docs_and_labels(
    corpus: Corpus,
    ids: Sequence[int],
    prepped: dict[int, TokenSequence],
) -> tuple[list[TokenSequence], list[int]]:
    docs = [prepped[i] for i in ids]
    labels = [corpus.by_id(i).label.sign for i in ids]
    return docs, labels


def run_single_seed(
    corpus: Corpus,
    config: ExperimentConfig,
    seed: int,
) -> tuple[list[EvalReport], Vocabulary]:
    """One split end to end. The returned vocabulary is the one fitted
    on the training half, exposed so callers can verify no test-set
    text ever reaches the fitting step."""
    with _stage("split"):
        manifest = stratified_split(corpus, config.split.train_fraction, seed)
    with _stage("preprocess"):
        prepped = {i: preprocess(corpus.by_id(i).text, config.prep) for i in corpus.ids()}
    train_docs, train_labels = _docs_and_labels(corpus, manifest.train_ids, prepped)
    test_docs, test_labels = _docs_and_labels(corpus, manifest.test_ids, prepped)
    with _stage("fit-vocabulary"):
        vocab = fit_vocabulary(train_docs, config.vectorizer)
        idf = IdfTable.from_vocabulary(vocab, config.vectorizer.idf_mode)
    with _stage("transform"):
        X_train = transform_corpus(train_docs, vocab, idf, config.vectorizer)
        X_test = transform_corpus(test_docs, vocab, idf, config.vectorizer)
    reports = []
    for spec in config.models:
        name = spec.kind.display
        started = time.perf_counter()
        with _stage(f"train:{name}"):
            model = fit(
                spec.kind,
                X_train,
                train_labels,
                spec.hyperparams,
                fingerprint=config.vectorizer.fingerprint(),
            )
        with _stage(f"evaluate:{name}"):
            report = evaluate(
                model,
                X_test,
                test_labels,
                config.averaging,
                feature_config=config.vectorizer,
                split_seed=seed,
            )
        elapsed_ms = int(round((time.perf_counter() - started) * 1000.0))
        reports.append(replace(report, runtime_ms=elapsed_ms))
    return reports, vocab


def run_experiment_on(corpus: Corpus, config: ExperimentConfig) -> RunBundle:
    reports: list[EvalReport] = []
    for seed in config.split.seeds:
        seed_reports, _ = run_single_seed(corpus, config, seed)
        reports.extend(seed_reports)
    return RunBundle(
        config=config,
        reports=tuple(reports),
        aggregates=aggregate_reports(config, reports),
    )


def run_experiment(config: ExperimentConfig) -> RunBundle:
    with _stage("load-dataset"):
        corpus = load_corpus(config.dataset_path)
    return run_experiment_on(corpus, config)


# ---------------------------------------------------------------- grid


@dataclass(frozen=True)
class GridCell:
    ngram_min: int
    ngram_max: int
    max_features: int
    mean_accuracy: tuple[tuple[str, float], ...]


@dataclass(frozen=True)
class GridFailure:
    ngram_min: int
    ngram_max: int
    max_features: int
    error: str


@dataclass(frozen=True)
class GridResult:
    cells: tuple[GridCell, ...]
    failures: tuple[GridFailure, ...]
    best: tuple[tuple[str, GridCell], ...]


def grid_search(
    base: ExperimentConfig,
    ngram_ranges: Sequence[tuple[int, int]] = DEFAULT_GRID_NGRAMS,
    max_features_list: Sequence[int] = DEFAULT_GRID_MAX_FEATURES,
) -> GridResult:
    """Sweep feature settings, running the full experiment per cell.
    Duplicate cells are dropped; a failed cell is recorded and the sweep
    continues."""
    if not ngram_ranges or not max_features_list:
        raise ValidationError("grid axes must be nonempty")
    with _stage("load-dataset"):
        corpus = load_corpus(base.dataset_path)
    seen: set[tuple[int, int, int]] = set()
    cells: list[GridCell] = []
    failures: list[GridFailure] = []
    for lo, hi in ngram_ranges:
        for mf in max_features_list:
            key = (lo, hi, mf)
            if key in seen:
                continue
            seen.add(key)
            try:
                cfg = replace(
                    base,
                    vectorizer=replace(
                        base.vectorizer, ngram_min=lo, ngram_max=hi, max_features=mf
                    ),
                )
                bundle = run_experiment_on(corpus, cfg)
            except DeceptextError as err:
                failures.append(GridFailure(lo, hi, mf, str(err)))
                continue
            cells.append(
                GridCell(
                    ngram_min=lo,
                    ngram_max=hi,
                    max_features=mf,
                    mean_accuracy=tuple(
                        (row.model_name, row.mean_accuracy) for row in bundle.aggregates
                    ),
                )
            )
    best = []
    if cells:
        for name in [spec.kind.display for spec in base.models]:
            ranked = max(cells, key=lambda c: dict(c.mean_accuracy)[name])
            best.append((name, ranked))
    return GridResult(cells=tuple(cells), failures=tuple(failures), best=tuple(best))


def grid_table_csv(result: GridResult) -> str:
    """Rows are grid cells, columns are per-model mean accuracies."""
    if not result.cells:
        raise ValidationError("grid produced no completed cells")
    names = [name for name, _ in result.cells[0].mean_accuracy]
    lines = ["ngram_min,ngram_max,max_features," + ",".join(names)]
    for cell in result.cells:
        accs = dict(cell.mean_accuracy)
        lines.append(
            f"{cell.ngram_min},{cell.ngram_max},{cell.max_features},"
            + ",".join(f"{accs[n]:.6f}" for n in names)
        )
    return "\n".join(lines) + "\n"


# --------------------------------------------------- model persistence


@dataclass(frozen=True)
class ModelBundle:
    """Everything needed to score raw text: prep settings, fitted
    vocabulary and IDF weights, vectorizer settings, trained model."""

    model: TrainedModel
    vocab: Vocabulary
    idf: IdfTable
    prep: PrepConfig
    vectorizer: VectorizerConfig

    def score_text(self, text: str) -> float:
        tokens = preprocess(text, self.prep)
        fv = transform(tokens, self.vocab, self.idf, self.vectorizer)
        return float(decision_scores(self.model, [fv])[0])


def _params_to_dict(model: TrainedModel) -> dict:
    p = model.params
    if isinstance(p, LinearParams):
        return {"type": "linear", "weights": list(p.weights), "bias": p.bias}
    if isinstance(p, NaiveBayesParams):
        return {
            "type": "naive_bayes",
            "log_prior_pos": p.log_prior_pos,
            "log_prior_neg": p.log_prior_neg,
            "log_lik_pos": list(p.log_lik_pos),
            "log_lik_neg": list(p.log_lik_neg),
        }
    return {
        "type": "kernel",
        "gamma": p.gamma,
        "bias": p.bias,
        "coefs": list(p.coefs),
        "support": [{"indices": list(fv.indices), "values": list(fv.values)} for fv in p.support],
    }


def _params_from_dict(raw: dict, dim: int) -> LinearParams | NaiveBayesParams | KernelParams:
    kind = raw["type"]
    if kind == "linear":
        return LinearParams(weights=tuple(raw["weights"]), bias=float(raw["bias"]))
    if kind == "naive_bayes":
        return NaiveBayesParams(
            log_prior_pos=float(raw["log_prior_pos"]),
            log_prior_neg=float(raw["log_prior_neg"]),
            log_lik_pos=tuple(raw["log_lik_pos"]),
            log_lik_neg=tuple(raw["log_lik_neg"]),
        )
    if kind == "kernel":
        return KernelParams(
            support=tuple(
                FeatureVector(indices=tuple(s["indices"]), values=tuple(s["values"]), dim=dim)
                for s in raw["support"]
            ),
            coefs=tuple(raw["coefs"]),
            bias=float(raw["bias"]),
            gamma=float(raw["gamma"]),
        )
    raise CorruptFile(f"unknown parameter type {kind!r}")


def _hp_to_dict(hp: Hyperparams) -> dict:
    return {
        "epochs": hp.epochs,
        "learning_rate": hp.learning_rate,
        "l2_lambda": hp.l2_lambda,
        "pa_C": hp.pa_C,
        "nb_alpha": hp.nb_alpha,
        "rbf_gamma": hp.rbf_gamma,
        "shuffle_seed": hp.shuffle_seed,
    }


def _prep_to_dict(prep: PrepConfig) -> dict:
    return {
        "remove_stopwords": prep.remove_stopwords,
        "lemmatize": prep.lemmatize,
        "stopword_list_id": prep.stopword_list_id,
    }


def _vectorizer_to_dict(cfg: VectorizerConfig) -> dict:
    return {
        "ngram_min": cfg.ngram_min,
        "ngram_max": cfg.ngram_max,
        "max_features": cfg.max_features,
        "idf_mode": cfg.idf_mode.value,
        "l2_normalize": cfg.l2_normalize,
    }


def _canonical_json(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def save_model(bundle: ModelBundle, path: str | Path) -> Path:
    """Write one self-describing JSON file with a format version and a
    content checksum, so a later load can detect truncation."""
    payload = {
        "prep": _prep_to_dict(bundle.prep),
        "vectorizer": _vectorizer_to_dict(bundle.vectorizer),
        "vocab": {
            "terms": list(bundle.vocab.terms),
            "df": list(bundle.vocab.df),
            "n_docs": bundle.vocab.n_docs,
        },
        "idf": {"weights": list(bundle.idf.weights), "mode": bundle.idf.mode.value},
        "model": {
            "kind": bundle.model.kind.value,
            "dim": bundle.model.dim,
            "fingerprint": bundle.model.fingerprint,
            "hyperparams": _hp_to_dict(bundle.model.hyperparams),
            "params": _params_to_dict(bundle.model),
        },
    }
    blob = _canonical_json(payload)
    document = {
        "format_version": MODEL_FORMAT_VERSION,
        "checksum": hashlib.sha256(blob.encode("utf-8")).hexdigest(),
        "payload": payload,
    }
    out = Path(path)
    try:
        write_atomic(out, json.dumps(document, sort_keys=True) + "\n")
    except OSError as err:
        raise IoFailure(f"cannot write model file {out}: {err}") from err
    return out


def load_model(path: str | Path) -> ModelBundle:
    src = Path(path)
    try:
        text = src.read_text(encoding="utf-8")
    except OSError as err:
        raise IoFailure(f"cannot read model file {src}: {err}") from err
    try:
        document = json.loads(text)
    except json.JSONDecodeError as err:
        raise CorruptFile(f"model file {src} is not valid JSON: {err}") from err
    if not isinstance(document, dict) or "format_version" not in document:
        raise CorruptFile(f"model file {src} lacks a format_version")
    if document["format_version"] != MODEL_FORMAT_VERSION:
        raise UnsupportedVersion(
            f"model file {src} has format_version {document['format_version']}, "
            f"expected {MODEL_FORMAT_VERSION}"
        )
    try:
        payload = document["payload"]
        stored = document["checksum"]
    except KeyError as err:
        raise CorruptFile(f"model file {src} lacks {err}") from err
    actual = hashlib.sha256(_canonical_json(payload).encode("utf-8")).hexdigest()
    if actual != stored:
        raise CorruptFile(f"model file {src} failed its checksum")
    try:
        vocab = Vocabulary(
            terms=tuple(payload["vocab"]["terms"]),
            df=tuple(payload["vocab"]["df"]),
            n_docs=int(payload["vocab"]["n_docs"]),
        )
        idf = IdfTable(
            weights=tuple(payload["idf"]["weights"]),
            mode=IdfMode(payload["idf"]["mode"]),
        )
        prep = PrepConfig(
            remove_stopwords=bool(payload["prep"]["remove_stopwords"]),
            lemmatize=bool(payload["prep"]["lemmatize"]),
            stopword_list_id=payload["prep"]["stopword_list_id"],
        )
        vec = VectorizerConfig(
            ngram_min=int(payload["vectorizer"]["ngram_min"]),
            ngram_max=int(payload["vectorizer"]["ngram_max"]),
            max_features=int(payload["vectorizer"]["max_features"]),
            idf_mode=IdfMode(payload["vectorizer"]["idf_mode"]),
            l2_normalize=bool(payload["vectorizer"]["l2_normalize"]),
        )
        dim = int(payload["model"]["dim"])
        hp_raw = payload["model"]["hyperparams"]
        model = TrainedModel(
            kind=ModelKind(payload["model"]["kind"]),
            dim=dim,
            params=_params_from_dict(payload["model"]["params"], dim),
            hyperparams=Hyperparams(**hp_raw),
            fingerprint=payload["model"].get("fingerprint", ""),
        )
    except (KeyError, TypeError, ValueError) as err:
        raise CorruptFile(f"model file {src} has a malformed payload: {err}") from err
    return ModelBundle(model=model, vocab=vocab, idf=idf, prep=prep, vectorizer=vec)


def train_bundle(
    corpus: Corpus,
    config: ExperimentConfig,
    kind: ModelKind,
    seed: int,
    hp: Hyperparams = Hyperparams(),
) -> tuple[ModelBundle, SplitManifest]:
    """Train one model on the seed's training half and package it with
    its fitted feature pipeline."""
    with _stage("split"):
        manifest = stratified_split(corpus, config.split.train_fraction, seed)
    with _stage("preprocess"):
        prepped = {i: preprocess(corpus.by_id(i).text, config.prep) for i in manifest.train_ids}
    train_docs = [prepped[i] for i in manifest.train_ids]
    train_labels = [corpus.by_id(i).label.sign for i in manifest.train_ids]
    with _stage("fit-vocabulary"):
        vocab = fit_vocabulary(train_docs, config.vectorizer)
        idf = IdfTable.from_vocabulary(vocab, config.vectorizer.idf_mode)
    with _stage("transform"):
        X_train = transform_corpus(train_docs, vocab, idf, config.vectorizer)
    with _stage(f"train:{kind.display}"):
        model = fit(kind, X_train, train_labels, hp, fingerprint=config.vectorizer.fingerprint())
    bundle = ModelBundle(
        model=model, vocab=vocab, idf=idf, prep=config.prep, vectorizer=config.vectorizer
    )
    return bundle, manifest


def predict_file(model_path: str | Path, input_path: str | Path) -> list[str]:
    """Score raw texts, one per line, through a saved pipeline. Output
    lines are ``score<TAB>label`` in input order."""
    bundle = load_model(model_path)
    src = Path(input_path)
    try:
        raw = src.read_text(encoding="utf-8")
    except OSError as err:
        raise IoFailure(f"cannot read input file {src}: {err}") from err
    lines = raw.splitlines()
    out = []
    for line in lines:
        score = bundle.score_text(line)
        label = Label.DECEPTIVE if score > 0.0 else Label.TRUTHFUL
        out.append(f"{score:.12g}\t{label.value}")
    return out


# ----------------------------------------------------- report emission


@lru_cache(maxsize=1)
def metrics_schema() -> dict:
    text = resources.files("deceptext.data").joinpath("metrics.schema.json").read_text("utf-8")
    return json.loads(text)


def validate_record(record: dict, source: str = "<record>") -> None:
    try:
        jsonschema.validate(record, metrics_schema())
    except jsonschema.ValidationError as err:
        raise SchemaMismatch(f"{source}: {err.message}") from err


def metrics_record(
    report: EvalReport,
    train_fraction: float,
    family: str = "classical",
) -> dict:
    cfg = report.feature_config
    record = {
        "schema_version": 1,
        "family": family,
        "model": report.model_name,
        "feature_config": {
            "ngram_min": cfg.ngram_min,
            "ngram_max": cfg.ngram_max,
            "max_features": cfg.max_features,
            "idf_mode": cfg.idf_mode.value,
            "l2_normalize": cfg.l2_normalize,
        },
        "split": {"seed": report.split_seed, "train_fraction": train_fraction},
        "averaging": report.averaging.value,
        "accuracy": report.accuracy,
        "precision": report.precision,
        "recall": report.recall,
        "f1": report.f1,
        "auc": report.auc,
        "confusion": {
            "tp": report.confusion.tp,
            "fp": report.confusion.fp,
            "fn": report.confusion.fn,
            "tn": report.confusion.tn,
        },
        "runtime_ms": report.runtime_ms,
    }
    validate_record(record)
    return record


def record_filename(record: dict) -> str:
    return f"{record['family']}_{record['model'].lower()}_seed{record['split']['seed']}.json"


def render_record(record: dict) -> str:
    return json.dumps(record, sort_keys=True, indent=2) + "\n"


def emit_report(
    bundle: RunBundle,
    out_dir: str | Path,
    formats: Sequence[str] = ("metrics-json", "table-csv", "figure-csv"),
) -> list[Path]:
    """Write the requested artifact files and return their paths."""
    known = {"metrics-json", "table-csv", "figure-csv"}
    unknown = set(formats) - known
    if unknown:
        raise ValidationError(f"unknown report formats: {sorted(unknown)}")
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as err:
        raise IoFailure(f"cannot create output dir {out}: {err}") from err
    written: list[Path] = []
    try:
        if "metrics-json" in formats:
            for report in bundle.reports:
                record = metrics_record(report, bundle.config.split.train_fraction)
                path = out / record_filename(record)
                write_atomic(path, render_record(record))
                written.append(path)
        if "table-csv" in formats:
            lines = ["model,accuracy,f1,recall,precision,auc"]
            for row in bundle.aggregates:
                lines.append(
                    f"{row.model_name},{row.mean_accuracy:.6f},{row.mean_f1:.6f},"
                    f"{row.mean_recall:.6f},{row.mean_precision:.6f},{row.mean_auc:.6f}"
                )
            path = out / "table.csv"
            write_atomic(path, "\n".join(lines) + "\n")
            written.append(path)
        if "figure-csv" in formats:
            lines = ["model,metric,value"]
            for row in bundle.aggregates:
                for metric in METRIC_NAMES:
                    value = getattr(row, f"mean_{metric}")
                    lines.append(f"{row.model_name},{metric},{value:.6f}")
            path = out / "figure.csv"
            write_atomic(path, "\n".join(lines) + "\n")
            written.append(path)
    except OSError as err:
        raise IoFailure(f"cannot write report files under {out}: {err}") from err
    return written


# ------------------------------------------------------------ compare


@dataclass(frozen=True)
class CompareResult:
    table_path: Path
    figure_path: Path
    row_count: int
    warning: str | None = None


def _load_records(paths: Sequence[str | Path]) -> list[dict]:
    records = []
    for p in paths:
        src = Path(p)
        try:
            record = json.loads(src.read_text(encoding="utf-8"))
        except OSError as err:
            raise IoFailure(f"cannot read metrics file {src}: {err}") from err
        except json.JSONDecodeError as err:
            raise SchemaMismatch(f"{src}: not valid JSON ({err})") from err
        validate_record(record, source=str(src))
        records.append(record)
    return records


def compare(
    primary_paths: Sequence[str | Path],
    secondary_paths: Sequence[str | Path],
    out_dir: str | Path,
) -> CompareResult:
    """Merge already-computed metric records from both families into one
    table and one tidy figure file. Values are echoed, never recomputed."""
    primary = _load_records(primary_paths)
    secondary = _load_records(secondary_paths)
    if not primary:
        raise ValidationError("no primary metrics files given")
    warning = None
    if not secondary:
        warning = "no secondary metrics files; emitting a classical-only comparison"
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as err:
        raise IoFailure(f"cannot create output dir {out}: {err}") from err
    table = ["family,model,seed,accuracy,f1,recall,precision,auc"]
    figure = ["family,model,metric,value"]
    for record in primary + secondary:
        fam, model, seed = record["family"], record["model"], record["split"]["seed"]
        table.append(
            f"{fam},{model},{seed},{record['accuracy']!r},{record['f1']!r},"
            f"{record['recall']!r},{record['precision']!r},{record['auc']!r}"
        )
        for metric in METRIC_NAMES:
            figure.append(f"{fam},{model},{metric},{record[metric]!r}")
    table_path = out / "comparison.csv"
    figure_path = out / "comparison_figure.csv"
    try:
        write_atomic(table_path, "\n".join(table) + "\n")
        write_atomic(figure_path, "\n".join(figure) + "\n")
    except OSError as err:
        raise IoFailure(f"cannot write comparison files under {out}: {err}") from err
    return CompareResult(
        table_path=table_path,
        figure_path=figure_path,
        row_count=len(primary) + len(secondary),
        warning=warning,
    )


# ------------------------------------------------------- config files


def config_to_dict(config: ExperimentConfig) -> dict:
    return {
        "dataset": config.dataset_path,
        "output_dir": config.output_dir,
        "averaging": config.averaging.value,
        "prep": _prep_to_dict(config.prep),
        "vectorizer": _vectorizer_to_dict(config.vectorizer),
        "split": {
            "train_fraction": config.split.train_fraction,
            "seeds": list(config.split.seeds),
        },
        "models": [
            {"kind": spec.kind.value, **_hp_to_dict(spec.hyperparams)} for spec in config.models
        ],
    }


def _take(raw: dict, allowed: set[str], where: str) -> None:
    unknown = set(raw) - allowed
    if unknown:
        raise ValidationError(f"unknown keys in {where}: {sorted(unknown)}")


def _model_spec_from_entry(entry) -> ModelSpec:
    if isinstance(entry, str):
        return ModelSpec(kind=ModelKind.parse(entry))
    if not isinstance(entry, dict) or "kind" not in entry:
        raise ValidationError(f"model entry must be a kind string or an object with 'kind': {entry!r}")
    _take(
        entry,
        {"kind", "epochs", "learning_rate", "l2_lambda", "pa_C", "nb_alpha", "rbf_gamma", "shuffle_seed"},
        "model entry",
    )
    kind = ModelKind.parse(entry["kind"])
    hp_fields = {k: v for k, v in entry.items() if k != "kind"}
    return ModelSpec(kind=kind, hyperparams=Hyperparams(**hp_fields))


def config_from_dict(raw: dict) -> ExperimentConfig:
    _take(raw, {"dataset", "output_dir", "averaging", "prep", "vectorizer", "split", "models"}, "config")
    prep_raw = raw.get("prep", {})
    _take(prep_raw, {"remove_stopwords", "lemmatize", "stopword_list_id"}, "prep")
    vec_raw = raw.get("vectorizer", {})
    _take(vec_raw, {"ngram_min", "ngram_max", "max_features", "idf_mode", "l2_normalize"}, "vectorizer")
    if "idf_mode" in vec_raw:
        vec_raw = dict(vec_raw, idf_mode=IdfMode.parse(vec_raw["idf_mode"]))
    split_raw = raw.get("split", {})
    _take(split_raw, {"train_fraction", "seeds"}, "split")
    models_raw = raw.get("models")
    models = (
        tuple(_model_spec_from_entry(e) for e in models_raw) if models_raw else DEFAULT_MODELS
    )
    return ExperimentConfig(
        dataset_path=raw.get("dataset", ""),
        prep=PrepConfig(**prep_raw),
        vectorizer=VectorizerConfig(**vec_raw),
        models=models,
        split=SplitConfig(
            train_fraction=split_raw.get("train_fraction", DEFAULT_TRAIN_FRACTION),
            seeds=tuple(split_raw.get("seeds", DEFAULT_SEEDS)),
        ),
        averaging=Averaging.parse(raw.get("averaging", Averaging.WEIGHTED.value)),
        output_dir=raw.get("output_dir", "runs"),
    )


def load_config_file(path: str | Path) -> dict:
    src = Path(path)
    try:
        return json.loads(src.read_text(encoding="utf-8"))
    except OSError as err:
        raise IoFailure(f"cannot read config file {src}: {err}") from err
    except json.JSONDecodeError as err:
        raise ValidationError(f"config file {src} is not valid JSON: {err}") from err
