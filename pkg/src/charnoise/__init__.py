"""Synthetic and natural noise for tokenized MT corpora, BLEU degradation
curves, and character-level word representation analysis."""

from charnoise.corpus import Corpus, ParallelCorpus, Sentence, corpus_stats, is_noisable, load_corpus, save_corpus
from charnoise.evaluation import BleuScore, DegradationCurve, corpus_bleu, degradation_report
from charnoise.natural import ErrorTable, apply_natural_noise, load_error_table, table_stats
from charnoise.pipeline import NoiseManifest, NoiseSpec, noise_corpus, sweep
from charnoise.representations import (
    CharVocab,
    EmbeddingTable,
    FilterBank,
    charcnn_repr,
    filter_variance_profile,
    mean_char_repr,
    variance_summary,
)
from charnoise.rng import DEFAULT_SEED, derive_sentence_rng
from charnoise.synthetic import KeyboardLayout, key_noise, load_layout, mid_noise, rand_noise, swap_noise

__version__ = "0.1.0"
