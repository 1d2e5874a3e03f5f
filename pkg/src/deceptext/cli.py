"""Command-line entry point.

Subcommands cover the whole workflow: export a split, train one model,
evaluate a saved model, run the full multi-seed benchmark, sweep the
feature grid, score raw text files, rebuild report tables from metrics
files, and merge classical and transformer metrics for comparison.

Settings come from defaults, then an optional JSON config file
(``--config``), then explicit flags; later sources win. Exit codes:
0 success, 1 validation error (bad inputs or config), 2 runtime failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .classifiers import ALL_KINDS
from .corpus import export_split, load_corpus, stratified_split, write_atomic
from .errors import RuntimeFailure, ValidationError
from .evaluation import evaluate
from .harness import (
    DEFAULT_GRID_MAX_FEATURES,
    DEFAULT_GRID_NGRAMS,
    METRIC_NAMES,
    CompareResult,
    ExperimentConfig,
    compare,
    config_from_dict,
    emit_report,
    grid_search,
    grid_table_csv,
    load_config_file,
    load_model,
    metrics_record,
    predict_file,
    run_experiment,
    save_model,
    train_bundle,
    validate_record,
)

PROG = "deceptext"


class _Parser(argparse.ArgumentParser):
    """argparse exits with its own code 2 on bad usage; route usage
    problems through the validation path (exit 1) instead."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise ValidationError(message)


def _add_dataset_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--dataset", help="path to the review CSV")
    p.add_argument("--config", help="JSON config file; flags override it")


def _add_feature_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--ngram-min", type=int, dest="ngram_min")
    p.add_argument("--ngram-max", type=int, dest="ngram_max")
    p.add_argument("--max-features", type=int, dest="max_features")
    p.add_argument("--idf-mode", dest="idf_mode", choices=["paper_exact", "smoothed"])
    p.add_argument("--averaging", choices=["positive_class", "macro", "weighted"])


def _add_split_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int)
    p.add_argument("--seeds", help="comma-separated seed list")
    p.add_argument("--train-fraction", type=float, dest="train_fraction")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog=PROG, description="Deceptive-review classification benchmark.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("split", help="export a stratified train/test split")
    _add_dataset_flags(p)
    _add_split_flags(p)
    p.add_argument("--out", required=True, help="output directory")

    p = sub.add_parser("train", help="train one model and save it")
    _add_dataset_flags(p)
    _add_feature_flags(p)
    _add_split_flags(p)
    p.add_argument("--model", required=True, choices=[k.value for k in ALL_KINDS])
    p.add_argument("--out", required=True, help="model file path")

    p = sub.add_parser("evaluate", help="evaluate a saved model on a CSV")
    _add_dataset_flags(p)
    _add_split_flags(p)
    p.add_argument("--model-path", required=True, dest="model_path")
    p.add_argument("--averaging", choices=["positive_class", "macro", "weighted"])
    p.add_argument("--out", help="metrics JSON path (default: stdout)")

    p = sub.add_parser("run", help="full multi-seed benchmark")
    _add_dataset_flags(p)
    _add_feature_flags(p)
    _add_split_flags(p)
    p.add_argument("--model", choices=[k.value for k in ALL_KINDS], help="restrict to one model")
    p.add_argument("--out", required=True, help="output directory")

    p = sub.add_parser("grid", help="sweep n-gram ranges and feature caps")
    _add_dataset_flags(p)
    _add_split_flags(p)
    p.add_argument("--averaging", choices=["positive_class", "macro", "weighted"])
    p.add_argument("--ngram-ranges", dest="ngram_ranges", help="e.g. 1:1,1:2,2:2")
    p.add_argument("--max-features-list", dest="max_features_list", help="e.g. 1000,5000")
    p.add_argument("--out", required=True, help="grid CSV path")

    p = sub.add_parser("predict", help="score raw texts, one per line")
    p.add_argument("--model-path", required=True, dest="model_path")
    p.add_argument("--input", required=True)
    p.add_argument("--out", help="output path (default: stdout)")

    p = sub.add_parser("report", help="rebuild table/figure CSVs from metrics files")
    p.add_argument("--metrics", required=True, nargs="+", help="metrics JSON files or dirs")
    p.add_argument("--out", required=True, help="output directory")

    p = sub.add_parser("compare", help="merge classical and transformer metrics")
    p.add_argument("--primary", required=True, nargs="+", help="metrics files or dirs")
    p.add_argument("--secondary", nargs="*", default=[], help="metrics files or dirs")
    p.add_argument("--out", required=True, help="output directory")

    return parser


def _parse_seed_list(raw: str) -> list[int]:
    try:
        return [int(s) for s in raw.split(",") if s.strip()]
    except ValueError:
        raise ValidationError(f"bad seed list: {raw!r}") from None


def _merged_config(args: argparse.Namespace) -> ExperimentConfig:
    raw = load_config_file(args.config) if getattr(args, "config", None) else {}
    raw = json.loads(json.dumps(raw))
    if getattr(args, "dataset", None):
        raw["dataset"] = args.dataset
    vec = dict(raw.get("vectorizer", {}))
    for key in ("ngram_min", "ngram_max", "max_features", "idf_mode"):
        value = getattr(args, key, None)
        if value is not None:
            vec[key] = value
    if vec:
        raw["vectorizer"] = vec
    split = dict(raw.get("split", {}))
    if getattr(args, "train_fraction", None) is not None:
        split["train_fraction"] = args.train_fraction
    if getattr(args, "seeds", None):
        split["seeds"] = _parse_seed_list(args.seeds)
    elif getattr(args, "seed", None) is not None:
        split["seeds"] = [args.seed]
    if split:
        raw["split"] = split
    if getattr(args, "averaging", None):
        raw["averaging"] = args.averaging
    if getattr(args, "model", None):
        raw["models"] = [args.model]
    return config_from_dict(raw)


def _expand_metric_paths(entries: list[str]) -> list[Path]:
    paths: list[Path] = []
    for entry in entries:
        p = Path(entry)
        if p.is_dir():
            paths.extend(sorted(p.glob("*.json")))
        else:
            paths.append(p)
    return paths


def _cmd_split(args: argparse.Namespace) -> int:
    config = _merged_config(args)
    corpus = load_corpus(config.dataset_path)
    seed = config.split.seeds[0]
    manifest = stratified_split(corpus, config.split.train_fraction, seed)
    train_path, test_path, manifest_path = export_split(corpus, manifest, args.out)
    print(f"train: {train_path}")
    print(f"test: {test_path}")
    print(f"manifest: {manifest_path}")
    return 0


def _cmd_train(args: argparse.Namespace) -> int:
    config = _merged_config(args)
    corpus = load_corpus(config.dataset_path)
    seed = config.split.seeds[0]
    spec = config.models[0]
    bundle, _ = train_bundle(corpus, config, spec.kind, seed, spec.hyperparams)
    path = save_model(bundle, args.out)
    print(f"model: {path}")
    return 0


def _cmd_evaluate(args: argparse.Namespace) -> int:
    config = _merged_config(args)
    bundle = load_model(args.model_path)
    corpus = load_corpus(config.dataset_path)
    from .textprep import preprocess
    from .vectorizer import transform_corpus

    docs = [preprocess(corpus.by_id(i).text, bundle.prep) for i in corpus.ids()]
    labels = [corpus.by_id(i).label.sign for i in corpus.ids()]
    X = transform_corpus(docs, bundle.vocab, bundle.idf, bundle.vectorizer)
    seed = config.split.seeds[0]
    report = evaluate(
        bundle.model,
        X,
        labels,
        config.averaging,
        feature_config=bundle.vectorizer,
        split_seed=seed,
    )
    record = metrics_record(report, config.split.train_fraction)
    rendered = json.dumps(record, sort_keys=True, indent=2)
    if args.out:
        write_atomic(Path(args.out), rendered + "\n")
        print(f"metrics: {args.out}")
    else:
        print(rendered)
    return 0


def _cmd_run(args: argparse.Namespace) -> int:
    config = _merged_config(args)
    bundle = run_experiment(config)
    written = emit_report(bundle, args.out)
    for path in written:
        print(f"wrote: {path}")
    print("model,accuracy,f1,recall,precision,auc")
    for row in bundle.aggregates:
        print(
            f"{row.model_name},{row.mean_accuracy:.4f},{row.mean_f1:.4f},"
            f"{row.mean_recall:.4f},{row.mean_precision:.4f},{row.mean_auc:.4f}"
        )
    return 0


def _parse_ngram_ranges(raw: str) -> list[tuple[int, int]]:
    out = []
    for part in raw.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            lo, hi = part.split(":")
            out.append((int(lo), int(hi)))
        except ValueError:
            raise ValidationError(f"bad n-gram range {part!r}; expected lo:hi") from None
    if not out:
        raise ValidationError(f"no n-gram ranges in {raw!r}")
    return out


def _cmd_grid(args: argparse.Namespace) -> int:
    config = _merged_config(args)
    ranges = (
        _parse_ngram_ranges(args.ngram_ranges) if args.ngram_ranges else DEFAULT_GRID_NGRAMS
    )
    caps = (
        _parse_seed_list(args.max_features_list)
        if args.max_features_list
        else DEFAULT_GRID_MAX_FEATURES
    )
    result = grid_search(config, ranges, caps)
    write_atomic(Path(args.out), grid_table_csv(result))
    print(f"grid: {args.out}")
    for name, cell in result.best:
        print(
            f"best[{name}]: ngram=({cell.ngram_min},{cell.ngram_max}) "
            f"max_features={cell.max_features} "
            f"accuracy={dict(cell.mean_accuracy)[name]:.4f}"
        )
    for failure in result.failures:
        print(
            f"failed: ngram=({failure.ngram_min},{failure.ngram_max}) "
            f"max_features={failure.max_features}: {failure.error}",
            file=sys.stderr,
        )
    return 0


def _cmd_predict(args: argparse.Namespace) -> int:
    lines = predict_file(args.model_path, args.input)
    if args.out:
        write_atomic(Path(args.out), "".join(line + "\n" for line in lines))
        print(f"predictions: {args.out}")
    else:
        for line in lines:
            print(line)
    return 0


def _cmd_report(args: argparse.Namespace) -> int:
    paths = _expand_metric_paths(args.metrics)
    if not paths:
        raise ValidationError("no metrics files found")
    records = []
    for p in paths:
        record = json.loads(Path(p).read_text(encoding="utf-8"))
        validate_record(record, source=str(p))
        records.append(record)
    order: list[str] = []
    grouped: dict[str, list[dict]] = {}
    for record in records:
        name = record["model"]
        if name not in grouped:
            order.append(name)
            grouped[name] = []
        grouped[name].append(record)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    table = ["model,accuracy,f1,recall,precision,auc"]
    figure = ["model,metric,value"]
    for name in order:
        means = {
            m: sum(r[m] for r in grouped[name]) / len(grouped[name]) for m in METRIC_NAMES
        }
        table.append(
            f"{name},{means['accuracy']:.6f},{means['f1']:.6f},{means['recall']:.6f},"
            f"{means['precision']:.6f},{means['auc']:.6f}"
        )
        for metric in METRIC_NAMES:
            figure.append(f"{name},{metric},{means[metric]:.6f}")
    write_atomic(out / "table.csv", "\n".join(table) + "\n")
    write_atomic(out / "figure.csv", "\n".join(figure) + "\n")
    print(f"table: {out / 'table.csv'}")
    print(f"figure: {out / 'figure.csv'}")
    return 0


def _cmd_compare(args: argparse.Namespace) -> int:
    result: CompareResult = compare(
        _expand_metric_paths(args.primary),
        _expand_metric_paths(args.secondary),
        args.out,
    )
    if result.warning:
        print(f"warning: {result.warning}", file=sys.stderr)
    print(f"table: {result.table_path}")
    print(f"figure: {result.figure_path}")
    print(f"rows: {result.row_count}")
    return 0


_COMMANDS = {
    "split": _cmd_split,
    "train": _cmd_train,
    "evaluate": _cmd_evaluate,
    "run": _cmd_run,
    "grid": _cmd_grid,
    "predict": _cmd_predict,
    "report": _cmd_report,
    "compare": _cmd_compare,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except ValidationError as err:
        print(f"{PROG}: error: {err}", file=sys.stderr)
        return 1
    except RuntimeFailure as err:
        print(f"{PROG}: failure: {err}", file=sys.stderr)
        return 2
    except OSError as err:
        print(f"{PROG}: failure: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
