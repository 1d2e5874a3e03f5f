"""Export the stratified train/test split for each seed as CSV pairs
plus a JSON manifest, for consumption by external training code.

Usage:
    python3 scripts/export_splits.py --dataset data/deceptive-opinion.csv --seeds 42,43,44,45,46 --out runs/splits
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from deceptext.corpus import export_split, load_corpus, stratified_split
from deceptext.harness import DEFAULT_SEEDS, DEFAULT_TRAIN_FRACTION


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dataset", default="data/deceptive-opinion.csv")
    ap.add_argument("--seeds", default=",".join(str(s) for s in DEFAULT_SEEDS))
    ap.add_argument("--train-fraction", type=float, default=DEFAULT_TRAIN_FRACTION)
    ap.add_argument("--out", default="runs/splits")
    args = ap.parse_args()

    corpus = load_corpus(args.dataset)
    for raw in args.seeds.split(","):
        seed = int(raw.strip())
        manifest = stratified_split(corpus, args.train_fraction, seed)
        out_dir = Path(args.out) / f"seed{seed}"
        train_path, test_path, manifest_path = export_split(corpus, manifest, out_dir)
        print(f"seed {seed}: {train_path} {test_path} {manifest_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
