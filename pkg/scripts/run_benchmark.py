"""Run the full five-model, five-seed benchmark and write metrics
records plus the summary table and figure CSVs.

Usage:
    python3 scripts/run_benchmark.py --dataset data/deceptive-opinion.csv --out runs/benchmark
"""

from __future__ import annotations

import argparse
import sys

from deceptext.harness import ExperimentConfig, emit_report, run_experiment


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dataset", default="data/deceptive-opinion.csv")
    ap.add_argument("--out", default="runs/benchmark")
    args = ap.parse_args()

    bundle = run_experiment(ExperimentConfig(dataset_path=args.dataset))
    paths = emit_report(bundle, args.out)
    header = f"{'model':<6} {'acc':>7} {'f1':>7} {'recall':>7} {'prec':>7} {'auc':>7}"
    print(header)
    for row in bundle.aggregates:
        print(
            f"{row.model_name:<6} {row.mean_accuracy:>7.3f} {row.mean_f1:>7.3f}"
            f" {row.mean_recall:>7.3f} {row.mean_precision:>7.3f} {row.mean_auc:>7.3f}"
        )
    print(f"{len(paths)} files written under {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
