"""SAX discretization with fixed global breakpoints plus run-merging.

Windows slide with step 1 sample.  Identical consecutive window words are
collapsed into a single variable-span word, which is what later allows one
motif to hold members of different lengths.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.stats import norm

from .core import AlphabetOutOfRange, DiscoveryConfig, Segment, SeriesTooShort, TimeSeries, paa

ALPHABET = "abcdefghijklmnopqrstuvwxyz"

# A word is a plain string of paa_size letters from the first alphabet_size
# lowercase letters.
SaxWord = str


def breakpoints(alphabet_size: int) -> np.ndarray:
    """Equiprobable standard-normal quantiles splitting the real line into alphabet_size bins.

    Element k is the inverse normal CDF at (k+1)/alphabet_size.  Applied to the
    globally z-normalized series, never recomputed per window.
    """
    if not 2 <= alphabet_size <= 26:
        raise AlphabetOutOfRange(f"alphabet_size must be in 2..26, got {alphabet_size}")
    qs = np.arange(1, alphabet_size) / alphabet_size
    return norm.ppf(qs)


def sax_word(
    series_values: np.ndarray,
    window: Segment,
    paa_size: int,
    bps: np.ndarray,
) -> SaxWord:
    """Discretize one window: frame means mapped to breakpoint intervals.

    A frame mean equal to a breakpoint goes to the upper interval.
    """
    frames = paa(series_values, window, paa_size)
    idx = np.searchsorted(bps, frames, side="right")
    return "".join(ALPHABET[i] for i in idx)


@dataclass(frozen=True)
class ModifiedWord:
    """A SAX word plus the sample span it covers after run-merging.

    span = window_size + run_count - 1 because windows slide by one sample.
    """

    word: SaxWord
    start: int
    span: int
    run_count: int


def window_words(values: np.ndarray, cfg: DiscoveryConfig) -> list[SaxWord]:
    """SAX word of every sliding window (step 1), vectorized over windows."""
    values = np.asarray(values, dtype=np.float64)
    n = values.shape[0]
    w = cfg.window_size
    if n < w:
        raise SeriesTooShort(f"series length {n} < window_size {w}")
    bps = breakpoints(cfg.alphabet_size)
    frame = w // cfg.paa_size
    n_windows = n - w + 1
    csum = np.concatenate([[0.0], np.cumsum(values)])
    starts = np.arange(n_windows)[:, None] + np.arange(cfg.paa_size)[None, :] * frame
    means = (csum[starts + frame] - csum[starts]) / frame
    idx = np.searchsorted(bps, means, side="right")
    letters = np.array(list(ALPHABET))
    rows = letters[idx]
    return ["".join(row) for row in rows]


def merge_runs(words: Sequence[SaxWord], window_size: int) -> list[ModifiedWord]:
    """Collapse maximal runs of identical consecutive window words."""
    merged: list[ModifiedWord] = []
    i = 0
    n = len(words)
    while i < n:
        j = i + 1
        while j < n and words[j] == words[i]:
            j += 1
        run = j - i
        merged.append(
            ModifiedWord(word=words[i], start=i, span=window_size + run - 1, run_count=run)
        )
        i = j
    return merged


def modified_sax(ts: TimeSeries, cfg: DiscoveryConfig) -> list[ModifiedWord]:
    """Discretize a normalized series into run-merged variable-span words."""
    return merge_runs(window_words(ts.values, cfg), cfg.window_size)


def expand_words(words: Sequence[ModifiedWord]) -> list[SaxWord]:
    """Inverse of merge_runs: the per-window word sequence."""
    out: list[SaxWord] = []
    for mw in words:
        out.extend([mw.word] * mw.run_count)
    return out
