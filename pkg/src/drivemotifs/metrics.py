"""Distance kernels: path-normalized dynamic time warping and per-sample Euclidean.

DTW uses pointwise cost |a_i - b_j| with match/insert/delete moves and, by
default, divides the optimal total cost by the optimal path length, so the
result is an average per-aligned-step deviation.  One radius therefore works
across members of different lengths.  Among equal-cost paths the shortest is
used, which makes the normalized value well defined and deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import numba
from numba import njit, prange

from .core import BandInfeasible, EmptyInput, LengthMismatch, Segment

numba.config.THREADING_LAYER = "workqueue"


@dataclass(frozen=True)
class DistanceOptions:
    """Alignment knobs: optional Sakoe-Chiba half-width and path normalization."""

    band: int | None = None
    normalize_by_path: bool = True

    def __post_init__(self):
        if self.band is not None and self.band < 1:
            raise ValueError(f"band must be >= 1 when set, got {self.band}")


@njit(cache=True)
def _dtw_cost_len(a, b, band):  # pragma: no cover - exercised through dtw()
    """(total cost, path length) of the cheapest monotone alignment.

    band < 0 means unbanded.  Ties on cost are broken toward the shorter path.
    """
    n = a.shape[0]
    m = b.shape[0]
    inf = np.inf
    prev_c = np.full(m + 1, inf)
    prev_l = np.zeros(m + 1, dtype=np.int64)
    cur_c = np.full(m + 1, inf)
    cur_l = np.zeros(m + 1, dtype=np.int64)
    prev_c[0] = 0.0
    for i in range(1, n + 1):
        for j in range(m + 1):
            cur_c[j] = inf
            cur_l[j] = 0
        jlo = 1
        jhi = m
        if band >= 0:
            if i - band > 1:
                jlo = i - band
            if i + band < m:
                jhi = i + band
        for j in range(jlo, jhi + 1):
            bc = prev_c[j - 1]
            bl = prev_l[j - 1]
            if prev_c[j] < bc or (prev_c[j] == bc and prev_l[j] < bl):
                bc = prev_c[j]
                bl = prev_l[j]
            if cur_c[j - 1] < bc or (cur_c[j - 1] == bc and cur_l[j - 1] < bl):
                bc = cur_c[j - 1]
                bl = cur_l[j - 1]
            if bc < inf:
                d = a[i - 1] - b[j - 1]
                if d < 0.0:
                    d = -d
                cur_c[j] = bc + d
                cur_l[j] = bl + 1
        prev_c, cur_c = cur_c, prev_c
        prev_l, cur_l = cur_l, prev_l
    return prev_c[m], prev_l[m]


def dtw(a, b, opts: DistanceOptions = DistanceOptions()) -> float:
    """Dynamic time warping distance between two 1-D sequences.

    Returns the optimal-path total cost divided by the optimal path length
    (cells visited) when opts.normalize_by_path, else the raw total cost.
    """
    a = np.ascontiguousarray(a, dtype=np.float64)
    b = np.ascontiguousarray(b, dtype=np.float64)
    if a.size == 0 or b.size == 0:
        raise EmptyInput("dtw requires non-empty sequences")
    band = -1 if opts.band is None else int(opts.band)
    if band >= 0 and abs(a.size - b.size) > band:
        raise BandInfeasible(
            f"band {band} cannot align lengths {a.size} and {b.size}"
        )
    cost, length = _dtw_cost_len(a, b, band)
    if opts.normalize_by_path:
        return float(cost) / int(length)
    return float(cost)


def euclid(a, b) -> float:
    """Per-sample Euclidean distance: sqrt of summed squared differences over length.

    Equal lengths only; used as a fast prefilter, never as the motif distance.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.size == 0 or b.size == 0:
        raise EmptyInput("euclid requires non-empty sequences")
    if a.size != b.size:
        raise LengthMismatch(f"lengths differ: {a.size} vs {b.size}")
    return float(np.sqrt(np.sum((a - b) ** 2)) / a.size)


@njit(cache=True, parallel=True)
def _pairwise_fill(values, starts, lengths, ii, jj, band, out):  # pragma: no cover
    for t in prange(ii.size):
        i = ii[t]
        j = jj[t]
        li = lengths[i]
        lj = lengths[j]
        if band >= 0 and abs(li - lj) > band:
            out[t] = np.inf
            continue
        a = values[starts[i]:starts[i] + li]
        b = values[starts[j]:starts[j] + lj]
        c, l = _dtw_cost_len(a, b, band)
        out[t] = c / l


def pairwise_dtw(
    values: np.ndarray,
    segments: list[Segment],
    opts: DistanceOptions = DistanceOptions(),
) -> np.ndarray:
    """Symmetric matrix of path-normalized DTW distances between segments.

    Pairs a band cannot align get +inf.  The matrix is filled by parallel
    workers over pairs; results do not depend on scheduling.
    """
    values = np.ascontiguousarray(values, dtype=np.float64)
    k = len(segments)
    out = np.zeros((k, k), dtype=np.float64)
    if k < 2:
        return out
    starts = np.array([s.start for s in segments], dtype=np.int64)
    lengths = np.array([s.length for s in segments], dtype=np.int64)
    ii, jj = np.triu_indices(k, 1)
    flat = np.empty(ii.size, dtype=np.float64)
    band = -1 if opts.band is None else int(opts.band)
    _pairwise_fill(values, starts, lengths, ii.astype(np.int64), jj.astype(np.int64), band, flat)
    out[ii, jj] = flat
    out[jj, ii] = flat
    return out
