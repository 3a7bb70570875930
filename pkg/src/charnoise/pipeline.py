"""Corpus-level noising: per-sentence method mixing, partial-fraction sweeps,
and run manifests.

Randomness layout for sentence i (stream derived from (seed, i)):

1. one draw choosing the sentence's noise method from `spec.methods`;
2. one uniform gate draw per token, left to right, for *every* token;
3. method-specific draws for the gated-in eligible tokens, left to right.

Because the gate draws never depend on the fraction, a token selected at
fraction p is selected at every p' >= p for the same seed.
"""
from __future__ import annotations

import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from charnoise.corpus import Corpus, Sentence, is_noisable
from charnoise.natural import ErrorTable
from charnoise.rng import DEFAULT_SEED, derive_sentence_rng
from charnoise.synthetic import (
    MID_MIN_LEN,
    SWAP_MIN_LEN,
    KeyboardLayout,
    key_noise,
    key_positions,
    mid_noise,
    rand_noise,
    swap_noise,
)

METHODS = ("swap", "mid", "rand", "key", "nat")


class SpecError(ValueError):
    pass


@dataclass(frozen=True)
class NoiseSpec:
    methods: tuple[str, ...]
    fraction: float = 1.0
    seed: int = DEFAULT_SEED
    layout: KeyboardLayout | None = None
    table: ErrorTable | None = None

    def __post_init__(self):
        object.__setattr__(self, "methods", tuple(self.methods))
        if not self.methods:
            raise SpecError("at least one noise method is required")
        bad = [m for m in self.methods if m not in METHODS]
        if bad:
            raise SpecError(f"unknown noise method(s) {bad}; choose from {', '.join(METHODS)}")
        if not 0.0 <= self.fraction <= 1.0:
            raise SpecError(f"fraction must be in [0, 1], got {self.fraction}")
        if "key" in self.methods and self.layout is None:
            raise SpecError("method 'key' requires a keyboard layout")
        if "nat" in self.methods and self.table is None:
            raise SpecError("method 'nat' requires an error table")

    def with_fraction(self, fraction: float) -> "NoiseSpec":
        return NoiseSpec(self.methods, fraction, self.seed, self.layout, self.table)

    def describe(self) -> dict:
        return {
            "methods": list(self.methods),
            "fraction": self.fraction,
            "seed": self.seed,
            "layout": self.layout.name if self.layout is not None else None,
            "table": (self.table.language or "<table>") if self.table is not None else None,
        }


@dataclass
class MethodCounts:
    sentences: int = 0
    seen: int = 0
    eligible: int = 0
    selected: int = 0
    modified: int = 0
    unchanged: int = 0
    skipped: int = 0

    def add(self, other: "MethodCounts") -> None:
        for k in self.__dataclass_fields__:
            setattr(self, k, getattr(self, k) + getattr(other, k))

    @property
    def ineligible(self) -> int:
        return self.seen - self.eligible

    def as_dict(self) -> dict:
        d = {k: getattr(self, k) for k in self.__dataclass_fields__}
        d["ineligible"] = self.ineligible
        return d


@dataclass
class NoiseManifest:
    """Exact counts for one noising run.

    `selected` tokens passed the fraction gate; each of them ends up
    `modified` (output differs), `unchanged` (noiser returned the input,
    e.g. an identity shuffle) or `skipped` (key noise with no character on
    the layout).
    """

    spec: dict
    per_method: dict[str, MethodCounts] = field(default_factory=dict)

    def counts(self, method: str) -> MethodCounts:
        return self.per_method.setdefault(method, MethodCounts())

    @property
    def total(self) -> MethodCounts:
        t = MethodCounts()
        for c in self.per_method.values():
            t.add(c)
        return t

    def merge(self, other: "NoiseManifest") -> None:
        for m, c in other.per_method.items():
            self.counts(m).add(c)

    def as_dict(self) -> dict:
        total = self.total
        return {
            "spec": self.spec,
            "totals": total.as_dict(),
            "modified_fraction_of_eligible": total.modified / total.eligible if total.eligible else 0.0,
            "modified_fraction_of_tokens": total.modified / total.seen if total.seen else 0.0,
            "per_method": {m: self.per_method[m].as_dict() for m in sorted(self.per_method)},
        }


def _eligible(method: str, tok: str, spec: NoiseSpec) -> bool:
    if method == "swap":
        return is_noisable(tok, SWAP_MIN_LEN)
    if method == "mid":
        return is_noisable(tok, MID_MIN_LEN)
    if method in ("rand", "key"):
        return is_noisable(tok, 1)
    return tok in spec.table


def _apply(method: str, tok: str, spec: NoiseSpec, rng: random.Random) -> str:
    if method == "swap":
        return swap_noise(tok, rng)
    if method == "mid":
        return mid_noise(tok, rng)
    if method == "rand":
        return rand_noise(tok, rng)
    if method == "key":
        return key_noise(tok, spec.layout, rng)
    vs = spec.table.variants(tok)
    return vs[rng.randrange(len(vs))]


def noise_sentence(sentence: Sentence, index: int, spec: NoiseSpec) -> tuple[Sentence, str, MethodCounts]:
    rng = derive_sentence_rng(spec.seed, index)
    method = spec.methods[rng.randrange(len(spec.methods))]
    gates = [rng.random() for _ in sentence.tokens]
    c = MethodCounts(sentences=1, seen=len(sentence))
    out = []
    for tok, u in zip(sentence.tokens, gates):
        if not _eligible(method, tok, spec):
            out.append(tok)
            continue
        c.eligible += 1
        if u >= spec.fraction:
            out.append(tok)
            continue
        c.selected += 1
        if method == "key" and not key_positions(tok, spec.layout):
            c.skipped += 1
            out.append(tok)
            continue
        new = _apply(method, tok, spec, rng)
        if new == tok:
            c.unchanged += 1
        else:
            c.modified += 1
        out.append(new)
    return Sentence(tuple(out)), method, c


def _noise_chunk(args) -> tuple[list[Sentence], NoiseManifest]:
    start, sentences, spec = args
    manifest = NoiseManifest(spec.describe())
    out = []
    for i, sent in enumerate(sentences, start):
        new, method, c = noise_sentence(sent, i, spec)
        manifest.counts(method).add(c)
        out.append(new)
    return out, manifest


def default_jobs() -> int:
    return os.cpu_count() or 1


def noise_corpus(
    corpus: Corpus, spec: NoiseSpec, jobs: int = 1, chunk_size: int | None = None
) -> tuple[Corpus, NoiseManifest]:
    """Noise the corpus sentence by sentence.

    Output is identical for any `jobs`; with jobs > 1 contiguous chunks are
    processed in worker processes and the manifests merged afterwards.
    """
    sents = corpus.sentences
    if chunk_size is None:
        chunk_size = max(1, -(-len(sents) // (4 * jobs))) if jobs > 1 else max(1, len(sents))
    chunks = [(s, sents[s:s + chunk_size], spec) for s in range(0, len(sents), chunk_size)]
    manifest = NoiseManifest(spec.describe())
    for m in spec.methods:
        manifest.counts(m)
    out: list[Sentence] = []
    if jobs > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, len(chunks))) as pool:
            results = list(pool.map(_noise_chunk, chunks))
    else:
        results = [_noise_chunk(c) for c in chunks]
    for part, m in results:
        out.extend(part)
        manifest.merge(m)
    return Corpus(tuple(out)), manifest


@dataclass
class SweepPoint:
    fraction: float
    corpus: Corpus
    manifest: NoiseManifest


def sweep(corpus: Corpus, spec: NoiseSpec, fractions: Sequence[float], jobs: int = 1) -> list[SweepPoint]:
    """One noised corpus per fraction, all from `spec.seed` (so selections nest)."""
    for f in fractions:
        if not 0.0 <= f <= 1.0:
            raise SpecError(f"fraction must be in [0, 1], got {f}")
    points = []
    for f in fractions:
        noised, manifest = noise_corpus(corpus, spec.with_fraction(f), jobs=jobs)
        points.append(SweepPoint(f, noised, manifest))
    return points

