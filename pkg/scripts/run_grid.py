"""Sweep n-gram ranges and vocabulary caps, writing one CSV row per
grid cell with each model's mean accuracy.

Usage:
    python3 scripts/run_grid.py --dataset data/deceptive-opinion.csv --out runs/grid.csv
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from deceptext.harness import ExperimentConfig, SplitConfig, grid_search, grid_table_csv


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dataset", default="data/deceptive-opinion.csv")
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--out", default="runs/grid.csv")
    args = ap.parse_args()

    config = ExperimentConfig(dataset_path=args.dataset, split=SplitConfig(seeds=(args.seed,)))
    result = grid_search(config)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(grid_table_csv(result))
    for name, cell in result.best:
        print(
            f"best {name}: ngram ({cell.ngram_min},{cell.ngram_max})"
            f" max_features {cell.max_features}"
        )
    for failure in result.failures:
        print(
            f"failed cell ({failure.ngram_min},{failure.ngram_max}) x {failure.max_features}:"
            f" {failure.error}",
            file=sys.stderr,
        )
    print(f"grid table written to {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
