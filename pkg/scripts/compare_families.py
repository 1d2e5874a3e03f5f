"""Merge classical and transformer metrics records into the combined
comparison table and tidy figure data.

Usage:
    python3 scripts/compare_families.py --primary runs/benchmark --secondary runs/transformer --out runs/comparison
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from deceptext.harness import compare


def expand(path_str: str | None) -> list[Path]:
    if not path_str:
        return []
    path = Path(path_str)
    return sorted(path.glob("*.json")) if path.is_dir() else [path]


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primary", required=True, help="metrics file or directory")
    ap.add_argument("--secondary", default=None, help="metrics file or directory")
    ap.add_argument("--out", default="runs/comparison")
    args = ap.parse_args()

    result = compare(expand(args.primary), expand(args.secondary), args.out)
    if result.warning:
        print(result.warning, file=sys.stderr)
    print(f"{result.row_count} rows -> {result.table_path}, {result.figure_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
