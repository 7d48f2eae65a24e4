"""Optimal tapered window of a noisy periodic signal for each support width.

Writes a CSV with one row per K_eff (loss, stage, weights on offsets 1..K)
and prints a short summary.

    python scripts/window_vs_width.py --n 61 --noise 0.3 --out widths.csv
"""
import argparse
import csv
import sys

import numpy as np

from taperopt.qp import solve


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=61)
    ap.add_argument("--periods", type=int, default=2)
    ap.add_argument("--noise", type=float, default=0.3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-k", type=int, default=12)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    t = np.arange(args.n)
    y = np.sin(2 * np.pi * args.periods * t / args.n) + args.noise * rng.normal(size=args.n)
    half = (args.n - 1) // 2

    rows = []
    for k in range(1, min(args.max_k, half) + 1):
        rep = solve(y, k)
        right = rep.window[half + 1: half + 1 + k]
        rows.append([k, rep.loss, rep.stage, rep.iterations, *right] + [""] * (args.max_k - k))
        print(f"K={k:3d}  loss={rep.loss:10.5f}  stage={rep.stage:13s}  w1={right[0]:.4f}")

    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    writer = csv.writer(fh)
    writer.writerow(["k", "loss", "stage", "iterations"] + [f"w{i}" for i in range(1, args.max_k + 1)])
    writer.writerows(rows)
    if args.out:
        fh.close()


if __name__ == "__main__":
    main()
