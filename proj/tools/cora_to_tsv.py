#!/usr/bin/env python3
"""Convert cora.content / cora.cites into nodes.tsv / edges.tsv."""
import argparse
import csv
from pathlib import Path


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("cora_dir", type=Path, help="directory with cora.content and cora.cites")
    ap.add_argument("out_dir", type=Path)
    args = ap.parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)

    with open(args.cora_dir / "cora.content", newline="") as f:
        rows = [r for r in csv.reader(f, delimiter="\t") if r]
    words = len(rows[0]) - 2
    with open(args.out_dir / "nodes.tsv", "w", newline="") as f:
        w = csv.writer(f, delimiter="\t", lineterminator="\n")
        w.writerow(["node_id", "label"] + ["real"] * words)
        for r in rows:
            w.writerow([r[0], r[-1]] + r[1:-1])

    with open(args.cora_dir / "cora.cites", newline="") as f, \
            open(args.out_dir / "edges.tsv", "w", newline="") as out:
        w = csv.writer(out, delimiter="\t", lineterminator="\n")
        for r in csv.reader(f, delimiter="\t"):
            if len(r) == 2:
                w.writerow(r)


if __name__ == "__main__":
    main()
