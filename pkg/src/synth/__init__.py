"""Synthetic AM-FM signals and the synthetic voice/music corpus.

Usage:
    from src.synth import AmFmParams, gen_am_fm, gen_corpus

    signal, truth = gen_am_fm(AmFmParams(1.0, 738.0, 50.0, 7.0, 0.3, 3.0), 1.0, 22050)
    corpus = gen_corpus(100, 100, 2.0, 22050, seed=7)
"""

from .am_fm import AmFmParams, gen_am_fm, gen_multicomponent, synthesis_phase
from .corpus import NOISE_SNR_DB, gen_corpus

__all__ = [
    "AmFmParams",
    "gen_am_fm",
    "gen_multicomponent",
    "synthesis_phase",
    "gen_corpus",
    "NOISE_SNR_DB",
]
