"""Tokenized corpus I/O.

Corpora are plain UTF-8 text, one pre-tokenized sentence per line with tokens
separated by single spaces. Text is NFC-normalized on read so that a
"character" is one Unicode scalar value of the composed form.
"""
from __future__ import annotations

import os
import unicodedata
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Sequence


class CorpusError(ValueError):
    pass


@dataclass(frozen=True)
class Sentence:
    tokens: tuple[str, ...]

    def __post_init__(self):
        for tok in self.tokens:
            if not tok or any(c.isspace() for c in tok):
                raise CorpusError(f"invalid token {tok!r}")

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self) -> Iterator[str]:
        return iter(self.tokens)

    def to_line(self) -> str:
        return " ".join(self.tokens)

    @classmethod
    def from_line(cls, line: str) -> "Sentence":
        return cls(tuple(line.split()))


@dataclass(frozen=True)
class Corpus:
    sentences: tuple[Sentence, ...]

    @property
    def line_count(self) -> int:
        return len(self.sentences)

    def __len__(self) -> int:
        return len(self.sentences)

    def __iter__(self) -> Iterator[Sentence]:
        return iter(self.sentences)

    def __getitem__(self, i):
        return self.sentences[i]

    @classmethod
    def from_tokens(cls, rows: Iterable[Sequence[str]]) -> "Corpus":
        return cls(tuple(Sentence(tuple(r)) for r in rows))

    def to_text(self) -> str:
        return "".join(s.to_line() + "\n" for s in self.sentences)


@dataclass(frozen=True)
class ParallelCorpus:
    source: Corpus
    target: Corpus

    def __post_init__(self):
        if self.source.line_count != self.target.line_count:
            raise CorpusError(
                f"source has {self.source.line_count} lines, "
                f"target has {self.target.line_count}"
            )


def parse_corpus(text: str, origin: str = "<string>") -> Corpus:
    """Parse already-decoded text into a corpus, warning on lossy lines."""
    if not text:
        return Corpus(())
    lines = text.split("\n")
    if lines[-1] == "":
        lines.pop()
    sentences = []
    lossy = []
    for lineno, raw in enumerate(lines, 1):
        line = unicodedata.normalize("NFC", raw)
        sent = Sentence.from_line(line)
        if sent.to_line() != raw:
            lossy.append(lineno)
        sentences.append(sent)
    if lossy:
        shown = ", ".join(map(str, lossy[:10])) + (" ..." if len(lossy) > 10 else "")
        warnings.warn(
            f"{origin}: {len(lossy)} line(s) not in canonical form "
            f"(irregular whitespace or non-NFC text; lines {shown}); "
            "re-serialization will not be byte-identical",
            stacklevel=3,
        )
    return Corpus(tuple(sentences))


def load_corpus(path: str | os.PathLike) -> Corpus:
    data = Path(path).read_bytes()
    # decode per line so errors can be located
    lines = data.split(b"\n")
    decoded = []
    for lineno, raw in enumerate(lines, 1):
        try:
            decoded.append(raw.decode("utf-8"))
        except UnicodeDecodeError as exc:
            raise CorpusError(f"{path}:{lineno}: invalid UTF-8 ({exc.reason})") from None
    return parse_corpus("\n".join(decoded), origin=str(path))


def save_corpus(corpus: Corpus, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(corpus.to_text())


def load_parallel(src_path: str | os.PathLike, tgt_path: str | os.PathLike) -> ParallelCorpus:
    return ParallelCorpus(load_corpus(src_path), load_corpus(tgt_path))


def is_noisable(token: str, min_len: int = 4) -> bool:
    """True iff the token is fully alphabetic and has at least `min_len` characters."""
    return len(token) >= min_len and len(token) > 0 and all(c.isalpha() for c in token)


def corpus_stats(corpus: Corpus) -> dict[str, int]:
    return {
        "sentences": corpus.line_count,
        "words": sum(len(s) for s in corpus.sentences),
    }
