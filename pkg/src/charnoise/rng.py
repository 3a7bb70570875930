"""Deterministic seeding.

Every random decision goes through a `random.Random` instance. Streams for
individual sentences are derived from the run seed and the sentence index
with a splitmix64 finalizer, so results do not depend on processing order.
"""
from __future__ import annotations

import random

DEFAULT_SEED = 20171102

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(x: int) -> int:
    """splitmix64 output function applied to one 64-bit word (a bijection)."""
    z = (x + _GOLDEN) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def mix_seed(seed: int, index: int) -> int:
    return splitmix64((splitmix64(seed & _MASK) + index) & _MASK)


def make_rng(seed: int) -> random.Random:
    return random.Random(seed & _MASK)


def derive_sentence_rng(seed: int, sentence_index: int) -> random.Random:
    if sentence_index < 0:
        raise ValueError("sentence_index must be nonnegative")
    return random.Random(mix_seed(seed, sentence_index))
