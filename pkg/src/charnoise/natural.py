"""Natural noise from harvested error lookup tables.

An error table maps a correctly spelled word to the erroneous forms observed
for it. The on-disk format is UTF-8 TSV, one word per line::

    <word>\t<error1>\t<error2>...
"""
from __future__ import annotations

import os
import random
import unicodedata
import warnings
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Mapping

from charnoise.corpus import Corpus, Sentence


class ErrorTableError(ValueError):
    pass


@dataclass(frozen=True)
class ErrorTable:
    entries: Mapping[str, tuple[str, ...]]
    language: str = ""
    fold_case: bool = False

    def __post_init__(self):
        for word, variants in self.entries.items():
            if not variants:
                raise ErrorTableError(f"no variants for {word!r}")
            if word in variants:
                raise ErrorTableError(f"{word!r} lists itself as an error variant")

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, token: str) -> bool:
        return self.variants(token) is not None

    @cached_property
    def _folded(self) -> dict[str, tuple[str, ...]]:
        folded: dict[str, list[str]] = {}
        for word, variants in self.entries.items():
            bucket = folded.setdefault(word.casefold(), [])
            bucket.extend(v for v in variants if v not in bucket)
        return {k: tuple(v) for k, v in folded.items()}

    def variants(self, token: str) -> tuple[str, ...] | None:
        if not self.fold_case:
            return self.entries.get(token)
        vs = self._folded.get(token.casefold())
        if vs is not None:
            # folded lookups may surface the token itself as a "variant"
            vs = tuple(v for v in vs if v != token) or None
        return vs

    def with_fold_case(self, fold_case: bool = True) -> "ErrorTable":
        return ErrorTable(self.entries, self.language, fold_case)


def parse_error_table(lines: Iterable[str], origin: str = "<table>", language: str = "") -> ErrorTable:
    entries: dict[str, list[str]] = {}
    for lineno, raw in enumerate(lines, 1):
        line = unicodedata.normalize("NFC", raw.rstrip("\r\n"))
        if not line.strip():
            continue
        fields = [f for f in line.split("\t") if f != ""]
        if len(fields) < 2:
            raise ErrorTableError(f"{origin}:{lineno}: expected <word>\\t<error>..., got {line!r}")
        word, variants = fields[0], fields[1:]
        if any(c.isspace() for f in fields for c in f):
            warnings.warn(f"{origin}:{lineno}: multi-word entry rejected", stacklevel=2)
            continue
        if word in variants:
            warnings.warn(f"{origin}:{lineno}: variant equals its word {word!r}; line rejected", stacklevel=2)
            continue
        bucket = entries.setdefault(word, [])
        bucket.extend(v for v in dict.fromkeys(variants) if v not in bucket)
    return ErrorTable({k: tuple(v) for k, v in entries.items()}, language=language)


def load_error_table(path: str | os.PathLike, language: str = "") -> ErrorTable:
    path = Path(path)
    with open(path, encoding="utf-8") as f:
        return parse_error_table(f, origin=str(path), language=language)


def apply_natural_noise(
    sentence: Sentence,
    table: ErrorTable,
    rng: random.Random,
    probability: float = 1.0,
) -> Sentence:
    """Replace each token that has table entries by a uniformly drawn variant.

    With `probability` < 1 each candidate token is first gated by a Bernoulli
    draw; at the default of 1.0 no gate draw is made.
    """
    out = []
    for tok in sentence.tokens:
        vs = table.variants(tok)
        if vs is not None and (probability >= 1.0 or rng.random() < probability):
            tok = vs[rng.randrange(len(vs))]
        out.append(tok)
    return Sentence(tuple(out))


@dataclass
class TableStats:
    words: int
    avg_errors: float
    train_recall: float
    test_recall: float
    long_train_recall: float
    long_test_recall: float

    def as_dict(self) -> dict:
        return dict(self.__dict__)

    def to_text(self) -> str:
        return (
            f"words      {self.words}\n"
            f"avg_errors {self.avg_errors:.2f}\n"
            f"recall     train {self.train_recall:.1%}  test {self.test_recall:.1%}\n"
            f"long words train {self.long_train_recall:.1%}  test {self.long_test_recall:.1%}\n"
        )


def token_recall(table: ErrorTable, corpus: Corpus, min_len: int = 0) -> float:
    """Fraction of corpus tokens (of length >= min_len) that have a table entry."""
    hits = total = 0
    for sent in corpus:
        for tok in sent.tokens:
            if len(tok) < min_len:
                continue
            total += 1
            hits += tok in table
    return hits / total if total else 0.0


def table_stats(table: ErrorTable, train: Corpus, test: Corpus, long_word_min: int = 5) -> TableStats:
    n = len(table)
    return TableStats(
        words=n,
        avg_errors=sum(len(v) for v in table.entries.values()) / n if n else 0.0,
        train_recall=token_recall(table, train),
        test_recall=token_recall(table, test),
        long_train_recall=token_recall(table, train, long_word_min),
        long_test_recall=token_recall(table, test, long_word_min),
    )
