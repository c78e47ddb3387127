#!/usr/bin/env python3
"""Plot surface-body quotients written by `renyi-convex surface-body --plot-out`."""

import argparse
import csv
import sys
from pathlib import Path


def read_series(path: Path) -> tuple[list[float], list[float], list[float]]:
    """Columns s, volume, quotient of a plot CSV."""
    s, volume, quotient = [], [], []
    with path.open(newline="") as f:
        for row in csv.DictReader(f):
            s.append(float(row["s"]))
            volume.append(float(row["volume"]))
            quotient.append(float(row["quotient"]))
    return s, volume, quotient


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("csv", nargs="+", help="plot CSV files")
    parser.add_argument("--out", default=None, help="image file (default: show a window)")
    parser.add_argument("--limit", type=float, default=None, help="draw the expected limit c_2 L / 8 as a line")
    args = parser.parse_args()

    try:
        import matplotlib

        if args.out:
            matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("Error: matplotlib is not installed. Run 'uv sync --extra plot'.")
        return 1

    fig, (ax_q, ax_v) = plt.subplots(1, 2, figsize=(10, 4))
    for name in args.csv:
        path = Path(name)
        if not path.exists():
            print(f"Error: {path} not found")
            return 1
        s, volume, quotient = read_series(path)
        ax_q.semilogx(s, quotient, "o-", label=path.stem)
        ax_v.semilogx(s, volume, "o-", label=path.stem)

    if args.limit is not None:
        ax_q.axhline(args.limit, color="gray", linestyle="--", label="limit")
    ax_q.set_xlabel("s")
    ax_q.set_ylabel("(|K| - |K_s|) / s^2")
    ax_v.set_xlabel("s")
    ax_v.set_ylabel("volume")
    ax_q.legend()
    fig.tight_layout()

    if args.out:
        fig.savefig(args.out, dpi=150)
        print(f"Wrote {args.out}")
    else:
        plt.show()
    return 0


if __name__ == "__main__":
    sys.exit(main())
