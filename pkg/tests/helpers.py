"""Test oracles shared across modules."""
from collections import Counter


class _Exhausted(Exception):
    def __init__(self, n):
        self.n = n


class ScriptedRng:
    """Stands in for random.Random: randrange returns a scripted sequence."""

    def __init__(self, script):
        self.script = list(script)
        self.pos = 0

    def randrange(self, n):
        if self.pos == len(self.script):
            raise _Exhausted(n)
        v = self.script[self.pos]
        assert 0 <= v < n
        self.pos += 1
        return v


def enumerate_outputs(fn) -> Counter:
    """Run fn(rng) under every possible sequence of randrange draws.

    Returns output -> number of draw sequences producing it. Every sequence
    has equal probability under a uniform randrange, so the counter is the
    exact output distribution up to normalization.
    """
    out = Counter()
    stack = [[]]
    while stack:
        prefix = stack.pop()
        try:
            result = fn(ScriptedRng(prefix))
        except _Exhausted as e:
            stack.extend(prefix + [k] for k in range(e.n))
            continue
        out[result] += 1
    return out


def brute_ngram_counts(hyp, ref, n):
    """Clipped n-gram matches by explicit list scanning (no Counter)."""
    hyp_grams = [tuple(hyp[i:i + n]) for i in range(len(hyp) - n + 1)]
    ref_grams = [tuple(ref[i:i + n]) for i in range(len(ref) - n + 1)]
    used = [False] * len(ref_grams)
    matches = 0
    for g in hyp_grams:
        for j, r in enumerate(ref_grams):
            if not used[j] and r == g:
                used[j] = True
                matches += 1
                break
    return matches, len(hyp_grams)


WORDS = (
    "Haus Zug Bahn Eltern nichts über die der und Übersetzung Sprache Fehler "
    "Menschen Jahren Tastatur Beispiel schwierig natürlich Gesellschaft wenige "
    "Buchstaben lesen Modell System 2017 , . ? Qualität Straße ja zu"
).split()

DISTINCT_LETTER_WORDS = "Bahn Haus Zug Wort Tische Brand Fluch Stern Kampf Lichter Bergwand".split()


def synthetic_corpus(n_sentences, seed=0, words=WORDS, max_len=12):
    import random

    from charnoise.corpus import Corpus

    r = random.Random(seed)
    return Corpus.from_tokens(
        [r.choice(words) for _ in range(r.randrange(0, max_len + 1))] for _ in range(n_sentences)
    )


def changed_positions(before, after):
    return {
        (i, j)
        for i, (a, b) in enumerate(zip(before, after))
        for j, (x, y) in enumerate(zip(a.tokens, b.tokens))
        if x != y
    }
