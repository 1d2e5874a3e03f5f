"""Command-line entry point.

Two subcommands: ``finetune`` runs one model on an exported split and
writes its metrics record; ``run-all`` runs all four models sequentially
with per-model isolation. Exit codes: 0 success, 1 validation error (bad
inputs or flags), 2 runtime failure (unreadable files, unavailable
checkpoint, out of memory, nothing succeeded), 3 partial success from
run-all (some models produced records, some failed).
"""

from __future__ import annotations

import argparse
import sys

from .errors import RuntimeFailure, ValidationError
from .finetune import (
    CHECKPOINTS,
    MODEL_IDS,
    FinetuneConfig,
    finetune_and_evaluate,
    run_all,
)

PROG = "transformer-baseline"

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_RUNTIME = 2
EXIT_PARTIAL = 3


class _Parser(argparse.ArgumentParser):
    """argparse exits with its own code 2 on bad usage; route usage
    problems through the validation path (exit 1) instead."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise ValidationError(message)


def _add_split_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--train", required=True, help="exported train CSV")
    p.add_argument("--test", required=True, help="exported test CSV")
    p.add_argument("--manifest", required=True, help="split manifest JSON")
    p.add_argument("--out", required=True, help="output directory for metrics records")
    p.add_argument("--smoke", action="store_true",
                   help="cap training at 64 examples and 1 epoch")
    p.add_argument("--seed", type=int, help="run seed (default 42)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog=PROG, description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("finetune", help="fine-tune one model on an exported split")
    p.add_argument("--model", required=True, choices=MODEL_IDS)
    _add_split_flags(p)
    p.add_argument("--epochs", type=int)
    p.add_argument("--batch-size", type=int)
    p.add_argument("--learning-rate", type=float)
    p.add_argument("--max-seq-len", type=int)
    p.add_argument("--checkpoint",
                   help="local directory or hub id overriding the published checkpoint")

    p = sub.add_parser("run-all", help="fine-tune all four models sequentially")
    _add_split_flags(p)
    p.add_argument("--checkpoint", action="append", default=[], metavar="MODEL=PATH",
                   help="per-model checkpoint override, repeatable")
    return parser


def _config_from_flags(args: argparse.Namespace) -> FinetuneConfig:
    kwargs: dict = {"model_id": args.model, "smoke": args.smoke}
    if args.epochs is not None:
        kwargs["epochs"] = args.epochs
    if args.batch_size is not None:
        kwargs["batch_size"] = args.batch_size
    if args.learning_rate is not None:
        kwargs["learning_rate"] = args.learning_rate
    if args.max_seq_len is not None:
        kwargs["max_sequence_length"] = args.max_seq_len
    if args.seed is not None:
        kwargs["seed"] = args.seed
    if args.checkpoint is not None:
        kwargs["checkpoint_path"] = args.checkpoint
    return FinetuneConfig(**kwargs)


def _cmd_finetune(args: argparse.Namespace) -> int:
    config = _config_from_flags(args)
    result = finetune_and_evaluate(args.train, args.test, args.manifest, config, args.out)
    r = result.record
    print(
        f"{r['model']}: accuracy={r['accuracy']:.4f} f1={r['f1']:.4f} "
        f"auc={r['auc']:.4f} -> {result.path}"
    )
    return EXIT_OK


def _parse_overrides(pairs: list[str]) -> dict[str, str]:
    overrides: dict[str, str] = {}
    for pair in pairs:
        model, sep, path = pair.partition("=")
        if not sep or not path or model not in MODEL_IDS:
            raise ValidationError(
                f"--checkpoint expects MODEL=PATH with MODEL in {MODEL_IDS}, got {pair!r}"
            )
        overrides[model] = path
    return overrides


def _cmd_run_all(args: argparse.Namespace) -> int:
    overrides = _parse_overrides(args.checkpoint)
    seed = args.seed if args.seed is not None else 42
    configs = {
        m: FinetuneConfig(
            model_id=m,
            seed=seed,
            smoke=args.smoke,
            checkpoint_path=overrides.get(m),
        )
        for m in MODEL_IDS
    }
    result = run_all(
        args.train, args.test, args.manifest, args.out, configs=configs
    )
    for fr in result.results:
        r = fr.record
        print(
            f"{r['model']}: accuracy={r['accuracy']:.4f} f1={r['f1']:.4f} "
            f"auc={r['auc']:.4f} -> {fr.path}"
        )
    for model_id, message in result.failures.items():
        print(f"{PROG}: {model_id} failed: {message}", file=sys.stderr)
    if not result.results:
        return EXIT_RUNTIME
    if result.failures:
        return EXIT_PARTIAL
    return EXIT_OK


_COMMANDS = {
    "finetune": _cmd_finetune,
    "run-all": _cmd_run_all,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise ValidationError("a command is required (finetune, run-all)")
        return _COMMANDS[args.command](args)
    except ValidationError as err:
        print(f"{PROG}: error: {err}", file=sys.stderr)
        return EXIT_VALIDATION
    except RuntimeFailure as err:
        print(f"{PROG}: failed: {err}", file=sys.stderr)
        return EXIT_RUNTIME
    except OSError as err:
        print(f"{PROG}: failed: {err}", file=sys.stderr)
        return EXIT_RUNTIME


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
