"""Compare the closed-form cascade, the forced projection route and both
brute-force oracles on random signals.

    python scripts/route_agreement.py --signals 200 --seed 0
"""
import argparse
from collections import Counter

import numpy as np

from taperopt.oracle import face_enumeration, grid_error_bound, grid_search
from taperopt.qp import SolverOptions, build_qp, solve


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--signals", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--lengths", type=int, nargs="+", default=[5, 7, 9, 11, 15, 21])
    ap.add_argument("--max-k", type=int, default=4)
    ap.add_argument("--grid-resolution", type=int, default=60)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    stages = Counter()
    worst = dict(project=0.0, faces=0.0, grid_excess=0.0)
    for _ in range(args.signals):
        n = int(rng.choice(args.lengths))
        y = rng.normal(size=n) + rng.choice([0.0, 3.0])
        k = int(rng.integers(1, min(args.max_k, (n - 1) // 2) + 1))
        qp = build_qp(y, k)
        rep = solve(y, k)
        stages[rep.stage] += 1
        proj = solve(y, k, SolverOptions(method="project"))
        faces = face_enumeration(qp)
        worst["project"] = max(worst["project"], abs(proj.loss - rep.loss) / qp.scale)
        worst["faces"] = max(worst["faces"], abs(faces.loss - rep.loss) / qp.scale)
        if k <= 3:
            grid = grid_search(y, k, args.grid_resolution)
            bound = grid_error_bound(qp, args.grid_resolution)
            worst["grid_excess"] = max(worst["grid_excess"], (grid.loss - rep.loss) / max(bound, 1e-300))

    print("stage counts:", dict(stages))
    print(f"max |projection - cascade| / (1+r0): {worst['project']:.3e}")
    print(f"max |faces - cascade| / (1+r0):      {worst['faces']:.3e}")
    print(f"max grid excess / grid bound:         {worst['grid_excess']:.3f}")


if __name__ == "__main__":
    main()
