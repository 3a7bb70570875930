"""Corpus BLEU on pre-tokenized text and BLEU-vs-noise degradation curves."""
from __future__ import annotations

import csv
import io
import math
import os
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from charnoise.corpus import Corpus, load_corpus


class BleuError(ValueError):
    pass


@dataclass(frozen=True)
class BleuScore:
    bleu: float
    precisions: tuple[float, ...]
    brevity_penalty: float
    hyp_length: int
    ref_length: int
    matches: tuple[int, ...] = ()
    totals: tuple[int, ...] = ()

    def as_dict(self) -> dict:
        return {
            "bleu": self.bleu,
            "precisions": list(self.precisions),
            "brevity_penalty": self.brevity_penalty,
            "hyp_length": self.hyp_length,
            "ref_length": self.ref_length,
            "matches": list(self.matches),
            "totals": list(self.totals),
        }


def _ngrams(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))


def ngram_stats(hyp: Sequence[str], ref: Sequence[str], max_n: int) -> tuple[list[int], list[int]]:
    """Clipped n-gram matches and hypothesis n-gram totals for one sentence pair."""
    matches, totals = [], []
    for n in range(1, max_n + 1):
        h, r = _ngrams(hyp, n), _ngrams(ref, n)
        matches.append(sum(min(c, r[g]) for g, c in h.items()))
        totals.append(max(len(hyp) - n + 1, 0))
    return matches, totals


def corpus_bleu(
    hypotheses: Corpus,
    references: Corpus,
    max_n: int = 4,
    case_sensitive: bool = True,
    smooth: bool = False,
) -> BleuScore:
    """Corpus-level BLEU with clipped counts accumulated over all sentences.

    Without smoothing, any zero n-gram precision gives BLEU 0. `smooth`
    adds one to matches and totals for n > 1.
    """
    if max_n < 1:
        raise BleuError(f"max_n must be >= 1, got {max_n}")
    if hypotheses.line_count != references.line_count:
        raise BleuError(
            f"hypotheses have {hypotheses.line_count} lines, references {references.line_count}"
        )
    matches = [0] * max_n
    totals = [0] * max_n
    hyp_len = ref_len = 0
    for hs, rs in zip(hypotheses, references):
        h, r = hs.tokens, rs.tokens
        if not case_sensitive:
            h = [t.lower() for t in h]
            r = [t.lower() for t in r]
        hyp_len += len(h)
        ref_len += len(r)
        m, t = ngram_stats(h, r, max_n)
        for i in range(max_n):
            matches[i] += m[i]
            totals[i] += t[i]

    precisions = []
    for n, (m, t) in enumerate(zip(matches, totals), 1):
        if smooth and n > 1:
            m, t = m + 1, t + 1
        precisions.append(m / t if t else 0.0)

    if hyp_len == 0:
        bp = math.exp(1 - ref_len) if ref_len else 1.0
        bp = max(bp, math.ulp(0.0))
    elif hyp_len < ref_len:
        bp = math.exp(1 - ref_len / hyp_len)
    else:
        bp = 1.0

    if min(precisions) > 0:
        bleu = 100.0 * bp * math.exp(sum(math.log(p) for p in precisions) / max_n)
    else:
        bleu = 0.0
    return BleuScore(min(bleu, 100.0), tuple(precisions), bp, hyp_len, ref_len, tuple(matches), tuple(totals))


@dataclass
class RunResult:
    fraction: float
    hypothesis: str
    reference: str
    score: BleuScore


@dataclass
class DegradationCurve:
    points: list[tuple[float, float]]
    noise_method: str = ""

    def __post_init__(self):
        fr = [f for f, _ in self.points]
        if any(b <= a for a, b in zip(fr, fr[1:])):
            raise ValueError("curve fractions must be strictly increasing")

    def is_non_increasing(self) -> bool:
        bleus = [b for _, b in self.points]
        return all(b <= a for a, b in zip(bleus, bleus[1:]))


CSV_COLUMNS = ("fraction", "bleu", "bp", "p1", "p2", "p3", "p4")


def degradation_report(
    runs: Sequence[tuple[float, str | os.PathLike, str | os.PathLike]],
    noise_method: str = "",
    **bleu_kwargs,
) -> tuple[DegradationCurve, list[RunResult]]:
    """Score each (fraction, hypothesis file, reference file) run.

    Runs are returned in input order; the curve is sorted by fraction and
    collapses repeated fractions, which must agree on BLEU.
    """
    results = []
    for fraction, hyp, ref in runs:
        try:
            score = corpus_bleu(load_corpus(hyp), load_corpus(ref), **bleu_kwargs)
        except (OSError, ValueError) as exc:
            raise BleuError(f"run fraction={fraction} hyp={hyp} ref={ref}: {exc}") from exc
        results.append(RunResult(float(fraction), str(hyp), str(ref), score))

    by_fraction: dict[float, float] = {}
    for r in results:
        prev = by_fraction.setdefault(r.fraction, r.score.bleu)
        if prev != r.score.bleu:
            raise BleuError(f"conflicting BLEU values for fraction {r.fraction}: {prev} vs {r.score.bleu}")
    curve = DegradationCurve(sorted(by_fraction.items()), noise_method)
    return curve, results


def report_csv(results: Sequence[RunResult]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in results:
        p = list(r.score.precisions[:4]) + [""] * (4 - min(4, len(r.score.precisions)))
        w.writerow([r.fraction, r.score.bleu, r.score.brevity_penalty, *p])
    return buf.getvalue()
