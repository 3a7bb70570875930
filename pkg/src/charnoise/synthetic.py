"""Synthetic per-word noise: Swap, Mid, Rand and Key.

All noisers are pure functions of (token, parameters, rng state). They raise
`NoiseError` when handed a token outside their domain; callers are expected
to filter with `is_noisable` first.
"""
from __future__ import annotations

import os
import random
import unicodedata
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Mapping

from charnoise.corpus import is_noisable

SWAP_MIN_LEN = 4
MID_MIN_LEN = 4

BUILTIN_LAYOUTS = ("de_qwertz", "fr_azerty", "cs_qwertz")
LAYOUT_ALIASES = {"de": "de_qwertz", "fr": "fr_azerty", "cs": "cs_qwertz"}


class NoiseError(ValueError):
    pass


class LayoutError(ValueError):
    pass


@dataclass(frozen=True)
class KeyboardLayout:
    """Character adjacency map. Keys and neighbors are stored lowercase."""

    adjacency: Mapping[str, tuple[str, ...]]
    name: str = "custom"

    def __post_init__(self):
        for ch, nbrs in self.adjacency.items():
            if len(ch) != 1:
                raise LayoutError(f"layout key {ch!r} is not a single character")
            if not nbrs:
                raise LayoutError(f"empty adjacency list for {ch!r}")
            if ch in nbrs:
                raise LayoutError(f"{ch!r} lists itself as a neighbor")
            if any(len(n) != 1 for n in nbrs):
                raise LayoutError(f"neighbor of {ch!r} is not a single character")

    def neighbors(self, ch: str) -> tuple[str, ...] | None:
        return self.adjacency.get(_lookup_key(ch))

    def covers(self, ch: str) -> bool:
        return _lookup_key(ch) in self.adjacency


def _lookup_key(ch: str) -> str:
    low = ch.lower()
    return low if len(low) == 1 else ch


def parse_layout(text: str, name: str = "custom") -> KeyboardLayout:
    adjacency: dict[str, list[str]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = unicodedata.normalize("NFC", raw.rstrip("\r"))
        if not line.strip() or line.startswith("#"):
            continue
        fields = [f for f in line.split("\t") if f]
        if len(fields) < 2:
            raise LayoutError(f"{name}:{lineno}: expected a key and at least one neighbor")
        key = _lookup_key(fields[0])
        nbrs = adjacency.setdefault(key, [])
        for n in fields[1:]:
            n = _lookup_key(n)
            if n == key:
                raise LayoutError(f"{name}:{lineno}: {key!r} lists itself as a neighbor")
            if n not in nbrs:
                nbrs.append(n)
    return KeyboardLayout({k: tuple(v) for k, v in adjacency.items()}, name=name)


def load_layout(path_or_name: str | os.PathLike) -> KeyboardLayout:
    """Load a layout TSV, or one of the shipped layouts by name (`de`, `fr_azerty`, ...)."""
    key = str(path_or_name)
    key = LAYOUT_ALIASES.get(key, key)
    if key in BUILTIN_LAYOUTS:
        text = resources.files("charnoise").joinpath(f"data/layouts/{key}.tsv").read_text("utf-8")
        return parse_layout(text, name=key)
    path = Path(path_or_name)
    return parse_layout(path.read_text(encoding="utf-8"), name=path.stem)


def _check(token: str, min_len: int, what: str) -> None:
    if not is_noisable(token, min_len):
        raise NoiseError(
            f"{what} needs an alphabetic token of length >= {min_len}, got {token!r}"
        )


def _shuffle(chars: list[str], rng: random.Random) -> None:
    # Fisher-Yates, from the end
    for i in range(len(chars) - 1, 0, -1):
        j = rng.randrange(i + 1)
        chars[i], chars[j] = chars[j], chars[i]


def swap_at(token: str, position: int) -> str:
    """Swap characters `position` and `position + 1`; both must be interior."""
    _check(token, SWAP_MIN_LEN, "swap")
    if not 1 <= position <= len(token) - 3:
        raise NoiseError(f"interior pair index {position} out of range for {token!r}")
    return token[:position] + token[position + 1] + token[position] + token[position + 2:]


def swap_noise(token: str, rng: random.Random) -> str:
    _check(token, SWAP_MIN_LEN, "swap")
    return swap_at(token, 1 + rng.randrange(len(token) - 3))


def mid_noise(token: str, rng: random.Random) -> str:
    _check(token, MID_MIN_LEN, "mid")
    inner = list(token[1:-1])
    _shuffle(inner, rng)
    return token[0] + "".join(inner) + token[-1]


def rand_noise(token: str, rng: random.Random) -> str:
    _check(token, 1, "rand")
    chars = list(token)
    _shuffle(chars, rng)
    return "".join(chars)


def key_positions(token: str, layout: KeyboardLayout) -> list[int]:
    return [i for i, c in enumerate(token) if layout.covers(c)]


def key_noise(token: str, layout: KeyboardLayout, rng: random.Random) -> str:
    """Replace one covered character by an adjacent key, keeping its case.

    Tokens with no character on the layout come back unchanged and consume
    no randomness.
    """
    _check(token, 1, "key")
    positions = key_positions(token, layout)
    if not positions:
        return token
    i = positions[rng.randrange(len(positions))]
    orig = token[i]
    nbrs = layout.neighbors(orig)
    repl = nbrs[rng.randrange(len(nbrs))]
    if orig.isupper():
        up = repl.upper()
        if len(up) == 1:
            repl = up
    return token[:i] + repl + token[i + 1:]
