import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.stats import chisquare

from charnoise.corpus import Corpus, is_noisable
from charnoise.natural import ErrorTable
from charnoise.pipeline import NoiseSpec, SpecError, noise_corpus, noise_sentence, sweep
from charnoise.rng import derive_sentence_rng, mix_seed, splitmix64
from helpers import DISTINCT_LETTER_WORDS, changed_positions, synthetic_corpus

TABLE = ErrorTable({"Haus": ("Hause", "Hsua"), "Zug": ("Zuk",), "die": ("di",), "nichts": ("nix", "nichst", "nicht")})


# -- seeding

def test_splitmix_reference_values():
    # reference outputs of the splitmix64 generator seeded with 0
    assert splitmix64(0) == 0xE220A8397B1DCDAF
    assert splitmix64(0x9E3779B97F4A7C15) == 0x6E789E6AA1B965F4


def test_splitmix_is_injective_on_a_range():
    vals = {splitmix64(i) for i in range(100_000)}
    assert len(vals) == 100_000


def test_sentence_rng_deterministic():
    a = derive_sentence_rng(42, 7)
    b = derive_sentence_rng(42, 7)
    assert [a.random() for _ in range(64)] == [b.random() for _ in range(64)]


def test_adjacent_indices_give_distinct_streams():
    seeds = [mix_seed(42, i) for i in range(100_000)]
    assert len(set(seeds)) == len(seeds)
    for i in (0, 1, 999, 54321):
        a, b = derive_sentence_rng(42, i), derive_sentence_rng(42, i + 1)
        xs = [a.getrandbits(64) for _ in range(64)]
        ys = [b.getrandbits(64) for _ in range(64)]
        assert all(x != y for x, y in zip(xs, ys))


def test_negative_index_rejected():
    with pytest.raises(ValueError):
        derive_sentence_rng(1, -1)


# -- spec validation

@pytest.mark.parametrize(
    "kwargs",
    [
        dict(methods=()),
        dict(methods=("typo",)),
        dict(methods=("swap",), fraction=1.5),
        dict(methods=("swap",), fraction=-0.1),
        dict(methods=("key",)),
        dict(methods=("nat",)),
    ],
)
def test_spec_validation(kwargs):
    with pytest.raises(SpecError):
        NoiseSpec(**kwargs)


# -- noise_corpus

def test_swap_full_fraction_example():
    c = Corpus.from_tokens([["noise", "der"]])
    out, m = noise_corpus(c, NoiseSpec(("swap",), 1.0))
    assert out[0].tokens in {("nosie", "der"), ("niose", "der")}
    assert m.total.eligible == 1 and m.total.modified == 1 and m.total.seen == 2


def test_zero_fraction_identity(de_layout):
    c = synthetic_corpus(300, seed=1)
    out, m = noise_corpus(c, NoiseSpec(("swap", "mid", "rand", "key", "nat"), 0.0, layout=de_layout, table=TABLE))
    assert out == c
    assert m.total.modified == 0 and m.total.selected == 0


def test_token_counts_preserved(de_layout):
    c = synthetic_corpus(500, seed=2)
    spec = NoiseSpec(("swap", "mid", "rand", "key", "nat"), 0.7, seed=9, layout=de_layout, table=TABLE)
    out, _ = noise_corpus(c, spec)
    assert out.line_count == c.line_count
    assert [len(s) for s in out] == [len(s) for s in c]


def test_ineligible_tokens_untouched(de_layout):
    c = synthetic_corpus(500, seed=3)
    out, _ = noise_corpus(c, NoiseSpec(("rand", "key"), 1.0, layout=de_layout))
    for a, b in zip(c, out):
        for x, y in zip(a.tokens, b.tokens):
            if not is_noisable(x, 1):
                assert x == y


def test_manifest_conservation(de_layout):
    c = synthetic_corpus(2000, seed=4)
    spec = NoiseSpec(("swap", "mid", "rand", "key", "nat"), 0.6, seed=5, layout=de_layout, table=TABLE)
    out, m = noise_corpus(c, spec)
    for cnt in m.per_method.values():
        assert cnt.seen == cnt.eligible + cnt.ineligible
        assert cnt.selected == cnt.modified + cnt.unchanged + cnt.skipped
        assert cnt.modified <= cnt.eligible <= cnt.seen
    t = m.total
    assert t.sentences == c.line_count
    assert t.seen == sum(len(s) for s in c)
    assert t.modified == len(changed_positions(c, out))


def test_mid_unchanged_counts_identity_shuffles():
    # 4-letter words: half of all interior shuffles are the identity
    c = Corpus.from_tokens([["Haus"]] * 4000)
    _, m = noise_corpus(c, NoiseSpec(("mid",), 1.0, seed=1))
    t = m.total
    assert t.selected == 4000
    assert abs(t.unchanged / 4000 - 0.5) < 0.05


def test_key_skipped_counted():
    from charnoise.synthetic import KeyboardLayout

    layout = KeyboardLayout({"a": ("s",)})
    c = Corpus.from_tokens([["xyz", "abc"]])
    out, m = noise_corpus(c, NoiseSpec(("key",), 1.0, layout=layout))
    assert out[0].tokens == ("xyz", "sbc")
    assert m.total.skipped == 1 and m.total.modified == 1


def test_serial_equals_parallel(de_layout):
    c = synthetic_corpus(3000, seed=6)
    spec = NoiseSpec(("rand", "key", "nat"), 0.5, seed=17, layout=de_layout, table=TABLE)
    serial, ms = noise_corpus(c, spec, jobs=1)
    par, mp = noise_corpus(c, spec, jobs=4)
    assert serial == par
    assert ms.as_dict() == mp.as_dict()


def test_order_independence(de_layout):
    c = synthetic_corpus(200, seed=7)
    spec = NoiseSpec(("swap", "key"), 0.8, seed=3, layout=de_layout)
    full, _ = noise_corpus(c, spec)
    reversed_results = [noise_sentence(c[i], i, spec)[0] for i in reversed(range(c.line_count))]
    assert list(reversed(reversed_results)) == list(full)


def test_method_mixing_uniform(de_layout):
    c = Corpus.from_tokens([["Haus"]] * 30_000)
    _, m = noise_corpus(c, NoiseSpec(("rand", "key", "nat"), 1.0, seed=8, layout=de_layout, table=TABLE))
    counts = [m.per_method[k].sentences for k in ("rand", "key", "nat")]
    assert sum(counts) == 30_000
    assert all(abs(x / 30_000 - 1 / 3) < 0.01 for x in counts)
    assert chisquare(counts).pvalue > 0.001


# -- sweep

def test_sweep_zero_is_identity():
    c = synthetic_corpus(100, seed=9)
    (p,) = sweep(c, NoiseSpec(("mid",)), [0.0])
    assert p.corpus == c


def test_sweep_full_mid_scrambles_everything():
    c = synthetic_corpus(200, seed=10)
    (p,) = sweep(c, NoiseSpec(("mid",)), [1.0])
    t = p.manifest.total
    assert t.selected == t.eligible


def test_sweep_rejects_bad_fraction():
    with pytest.raises(SpecError):
        sweep(Corpus(()), NoiseSpec(("mid",)), [0.5, 2.0])


def test_sweep_nesting_and_fidelity():
    c = synthetic_corpus(2500, seed=11, words=DISTINCT_LETTER_WORDS)
    fractions = [round(0.1 * k, 1) for k in range(1, 11)]
    points = sweep(c, NoiseSpec(("swap",), seed=12), fractions)
    prev = set()
    for p in points:
        t = p.manifest.total
        assert t.eligible >= 10_000
        assert abs(t.modified / t.eligible - p.fraction) <= 0.01
        pos = changed_positions(c, p.corpus)
        assert len(pos) == t.modified
        assert prev <= pos
        prev = pos


@given(st.floats(0, 1), st.floats(0, 1), st.integers(0, 2**63))
def test_nesting_property(f1, f2, seed):
    # swap on words with distinct letters always changes the token, so
    # changed positions are exactly the selected positions
    lo, hi = sorted((f1, f2))
    c = synthetic_corpus(40, seed=seed % 1000, words=DISTINCT_LETTER_WORDS)
    a, b = sweep(c, NoiseSpec(("swap",), seed=seed), [lo, hi])
    assert changed_positions(c, a.corpus) <= changed_positions(c, b.corpus)
