"""Character-level word representations and convolution filter analysis.

Only forward passes are implemented; parameters are loaded from text weight
files or generated for experiments.

Weight file layouts (UTF-8, whitespace separated)::

    emb <vocab_size> <dim>
    <row 0>                      # vocab_size rows of dim reals
    ...

    charcnn <num_filters> <width> <dim>
    <filter 0, position 0>       # num_filters * width rows of dim reals,
    <filter 0, position 1>       # filter-major, then position in the window
    ...
    <bias>                       # one final row of num_filters reals

Vocabulary files list one character per line in index order. Line 1 is the
unknown-character entry and line 2 the padding entry; their contents are
arbitrary placeholders.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

import numpy as np

UNK_INDEX = 0
PAD_INDEX = 1


class WeightFileError(ValueError):
    pass


@dataclass(frozen=True)
class CharVocab:
    chars: tuple[str, ...]
    unk_index: int = UNK_INDEX
    pad_index: int = PAD_INDEX

    def __post_init__(self):
        if len(set(self.chars[2:])) != len(self.chars) - 2:
            raise ValueError("duplicate characters in vocabulary")
        object.__setattr__(self, "_index", {c: i for i, c in enumerate(self.chars) if i >= 2})

    @classmethod
    def from_chars(cls, chars: Iterable[str]) -> "CharVocab":
        return cls(("<unk>", "<pad>", *dict.fromkeys(chars)))

    def __len__(self) -> int:
        return len(self.chars)

    def index(self, ch: str) -> int:
        return self._index.get(ch, self.unk_index)

    def encode(self, token: str) -> list[int]:
        return [self.index(c) for c in token]


@dataclass(frozen=True)
class EmbeddingTable:
    vectors: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vectors, dtype=np.float64)
        if v.ndim != 2:
            raise ValueError("embedding table must be a matrix")
        if not np.all(np.isfinite(v)):
            raise ValueError("embedding table has non-finite values")
        v.setflags(write=False)
        object.__setattr__(self, "vectors", v)

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    @property
    def vocab_size(self) -> int:
        return self.vectors.shape[0]


@dataclass(frozen=True)
class FilterBank:
    weights: np.ndarray  # [num_filters, width, dim]
    bias: np.ndarray  # [num_filters]

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=np.float64)
        b = np.asarray(self.bias, dtype=np.float64)
        if w.ndim != 3:
            raise ValueError("filter weights must be [num_filters, width, dim]")
        if b.shape != (w.shape[0],):
            raise ValueError(f"bias shape {b.shape} does not match {w.shape[0]} filters")
        if not (np.all(np.isfinite(w)) and np.all(np.isfinite(b))):
            raise ValueError("filter bank has non-finite values")
        w.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "bias", b)

    @property
    def num_filters(self) -> int:
        return self.weights.shape[0]

    @property
    def width(self) -> int:
        return self.weights.shape[1]

    @property
    def dim(self) -> int:
        return self.weights.shape[2]


def _embed(token: str, emb: EmbeddingTable, vocab: CharVocab) -> np.ndarray:
    if not token:
        raise ValueError("cannot represent an empty token")
    return emb.vectors[vocab.encode(token)]


def mean_char_repr(token: str, emb: EmbeddingTable, vocab: CharVocab) -> np.ndarray:
    """Average of the token's character embeddings.

    Rows are summed in sorted vocabulary-index order, so any permutation of
    the characters gives a bitwise identical result.
    """
    if not token:
        raise ValueError("cannot represent an empty token")
    idx = sorted(vocab.encode(token))
    acc = np.zeros(emb.dim)
    for i in idx:
        acc += emb.vectors[i]
    return acc / len(idx)


def charcnn_repr(token: str, emb: EmbeddingTable, filters: FilterBank, vocab: CharVocab) -> np.ndarray:
    """Convolution over character embeddings, tanh, then max over positions.

    Words shorter than the filter width are right-padded with zero vectors.
    """
    if filters.dim != emb.dim:
        raise ValueError(f"filter dim {filters.dim} != embedding dim {emb.dim}")
    x = _embed(token, emb, vocab)
    width = filters.width
    if len(x) < width:
        x = np.vstack([x, np.zeros((width - len(x), emb.dim))])
    windows = np.lib.stride_tricks.sliding_window_view(x, (width, emb.dim))[:, 0]
    # [positions, filters]
    scores = np.einsum("pwd,fwd->pf", windows, filters.weights) + filters.bias
    return np.tanh(scores).max(axis=0)


def filter_variance_profile(filters: FilterBank) -> np.ndarray:
    """Per embedding dimension, the mean over filters of the population
    variance of each filter's weights along its width."""
    w = filters.weights
    # shifting by the first position is exact for constant rows and
    # leaves the variance unchanged otherwise
    d = w - w[:, :1, :]
    dev = d - d.mean(axis=1, keepdims=True)
    var = (dev * dev).mean(axis=1)  # [num_filters, dim]
    return var.mean(axis=0)


@dataclass
class VarianceSummary:
    mean: float
    variance_of_variances: float
    quartiles: tuple[float, float, float]
    minimum: float
    maximum: float

    def as_dict(self) -> dict:
        return {
            "mean": self.mean,
            "variance_of_variances": self.variance_of_variances,
            "quartiles": list(self.quartiles),
            "min": self.minimum,
            "max": self.maximum,
        }


def variance_summary(profile) -> VarianceSummary:
    p = np.asarray(profile, dtype=np.float64)
    if p.size == 0:
        raise ValueError("empty variance profile")
    q1, q2, q3 = np.percentile(p, [25, 50, 75])
    return VarianceSummary(
        mean=float(p.mean()),
        variance_of_variances=float(p.var()),
        quartiles=(float(q1), float(q2), float(q3)),
        minimum=float(p.min()),
        maximum=float(p.max()),
    )


def random_filter_bank(
    rng: np.random.Generator, num_filters: int = 1000, width: int = 6, dim: int = 25, scale: float = 1.0
) -> FilterBank:
    return FilterBank(rng.normal(0.0, scale, (num_filters, width, dim)), rng.normal(0.0, scale, num_filters))


def near_uniform_filter_bank(
    rng: np.random.Generator, num_filters: int = 1000, width: int = 6, dim: int = 25, jitter: float = 1e-3
) -> FilterBank:
    """Each filter uses one weight per dimension across its whole width, plus a
    small uniform jitter: the shape of filters that ignore character order."""
    base = rng.normal(0.0, 1.0, (num_filters, 1, dim))
    w = base + rng.uniform(-jitter, jitter, (num_filters, width, dim))
    return FilterBank(w, np.zeros(num_filters))


# ---------------------------------------------------------------- file I/O


def _rows(path: Path) -> Iterable[tuple[int, list[str]]]:
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            parts = line.split()
            if parts:
                yield lineno, parts


def _floats(parts, n, path, lineno) -> list[float]:
    if len(parts) != n:
        raise WeightFileError(f"{path}:{lineno}: expected {n} values, got {len(parts)}")
    try:
        return [float(p) for p in parts]
    except ValueError as exc:
        raise WeightFileError(f"{path}:{lineno}: {exc}") from None


def load_weights(path: str | os.PathLike) -> EmbeddingTable | FilterBank:
    path = Path(path)
    rows = list(_rows(path))
    if not rows:
        raise WeightFileError(f"{path}: empty weight file")
    (hl, header), body = rows[0], rows[1:]
    kind = header[0]
    try:
        shape = [int(h) for h in header[1:]]
    except ValueError:
        raise WeightFileError(f"{path}:{hl}: bad header {' '.join(header)!r}") from None
    if kind == "emb" and len(shape) == 2:
        n, dim = shape
        if len(body) != n:
            raise WeightFileError(f"{path}: expected {n} rows, found {len(body)}")
        return EmbeddingTable(np.array([_floats(p, dim, path, ln) for ln, p in body]).reshape(n, dim))
    if kind == "charcnn" and len(shape) == 3:
        nf, width, dim = shape
        if len(body) != nf * width + 1:
            raise WeightFileError(f"{path}: expected {nf * width + 1} rows, found {len(body)}")
        w = np.array([_floats(p, dim, path, ln) for ln, p in body[:-1]]).reshape(nf, width, dim)
        ln, p = body[-1]
        return FilterBank(w, np.array(_floats(p, nf, path, ln)))
    raise WeightFileError(f"{path}:{hl}: unknown header {' '.join(header)!r}")


def save_weights(obj: EmbeddingTable | FilterBank, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        if isinstance(obj, EmbeddingTable):
            f.write(f"emb {obj.vocab_size} {obj.dim}\n")
            rows = obj.vectors
        else:
            f.write(f"charcnn {obj.num_filters} {obj.width} {obj.dim}\n")
            rows = list(obj.weights.reshape(-1, obj.dim)) + [obj.bias]
        for row in rows:
            f.write(" ".join(repr(float(x)) for x in row) + "\n")


def load_vocab(path: str | os.PathLike) -> CharVocab:
    with open(path, encoding="utf-8", newline="") as f:
        chars = [line.rstrip("\n").rstrip("\r") for line in f]
    if len(chars) < 2:
        raise WeightFileError(f"{path}: vocabulary needs unk and pad lines")
    return CharVocab(tuple(chars))


def save_vocab(vocab: CharVocab, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write("".join(c + "\n" for c in vocab.chars))
