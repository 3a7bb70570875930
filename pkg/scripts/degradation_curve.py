"""BLEU as a function of the fraction of noised words, with a copy-source
translator standing in for an MT system.

The clean source serves as the reference, so the curve isolates how much of
the text each noise type destroys (the upper bound a perfectly noise-robust
system could recover from is 100 everywhere).

    python scripts/degradation_curve.py tests/data/fixture.de --methods swap --layout de
"""
from __future__ import annotations

import argparse
import sys

from charnoise.corpus import load_corpus
from charnoise.evaluation import corpus_bleu
from charnoise.natural import load_error_table
from charnoise.pipeline import NoiseSpec, sweep
from charnoise.rng import DEFAULT_SEED
from charnoise.synthetic import load_layout


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("corpus")
    ap.add_argument("--methods", default="swap,mid,rand,key")
    ap.add_argument("--layout", default="de")
    ap.add_argument("--table")
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ap.add_argument("--steps", type=int, default=10)
    ap.add_argument("--plot", help="write a PNG of the curves (needs matplotlib)")
    args = ap.parse_args()

    clean = load_corpus(args.corpus)
    layout = load_layout(args.layout)
    table = load_error_table(args.table) if args.table else None
    fractions = [k / args.steps for k in range(args.steps + 1)]

    curves = {}
    print("method,fraction,bleu,modified_fraction")
    for method in args.methods.split(","):
        spec = NoiseSpec((method,), seed=args.seed, layout=layout, table=table)
        curves[method] = []
        for p in sweep(clean, spec, fractions):
            bleu = corpus_bleu(p.corpus, clean).bleu
            t = p.manifest.total
            realized = t.modified / t.seen if t.seen else 0.0
            curves[method].append((p.fraction, bleu))
            print(f"{method},{p.fraction:.2f},{bleu:.2f},{realized:.3f}")

    if args.plot:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        fig, ax = plt.subplots(figsize=(5, 3.5))
        for method, pts in curves.items():
            ax.plot([f * 100 for f, _ in pts], [b for _, b in pts], marker="o", label=method)
        ax.set_xlabel("% of eligible words noised")
        ax.set_ylabel("BLEU vs. clean source")
        ax.legend()
        fig.tight_layout()
        fig.savefig(args.plot, dpi=150)
        print(f"wrote {args.plot}", file=sys.stderr)


if __name__ == "__main__":
    main()
