"""Compare per-dimension filter weight variances across charCNN banks.

With weight files (``charcnn`` format) the banks are read from disk; without
arguments two synthetic 1000x6x25 banks are generated: one whose filters are
nearly constant along the width (what training on fully scrambled words
pushes towards) and one with independent random weights.

    python scripts/filter_variances.py [bank1.txt bank2.txt ...] [--plot out.png]
"""
from __future__ import annotations

import argparse
from pathlib import Path

import numpy as np

from charnoise.representations import (
    filter_variance_profile,
    load_weights,
    near_uniform_filter_bank,
    random_filter_bank,
    variance_summary,
)


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("weights", nargs="*")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--plot")
    args = ap.parse_args()

    if args.weights:
        banks = {Path(p).stem: load_weights(p) for p in args.weights}
    else:
        rng = np.random.default_rng(args.seed)
        banks = {
            "near-uniform": near_uniform_filter_bank(rng),
            "random": random_filter_bank(rng),
        }

    profiles = {}
    print(f"{'bank':<14}{'mean':>12}{'var of var':>14}{'q1':>10}{'median':>10}{'q3':>10}")
    for name, bank in banks.items():
        prof = filter_variance_profile(bank)
        profiles[name] = prof
        s = variance_summary(prof)
        q1, q2, q3 = s.quartiles
        print(f"{name:<14}{s.mean:>12.4g}{s.variance_of_variances:>14.4g}{q1:>10.4g}{q2:>10.4g}{q3:>10.4g}")

    if args.plot:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        fig, ax = plt.subplots(figsize=(4, 3.5))
        ax.boxplot(list(profiles.values()), labels=list(profiles))
        ax.set_ylabel("avg. variance across filter width")
        fig.tight_layout()
        fig.savefig(args.plot, dpi=150)


if __name__ == "__main__":
    main()
