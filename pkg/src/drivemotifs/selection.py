"""Post-processing of the ranked motif list.

Two tools: a greedy scan that keeps only motifs whose centers sit more than
2R apart (the k-motifs), and a density clustering of all motif centers for
exploring the full candidate set.  Both measure centers with the same
path-normalized DTW used during discovery.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .core import Segment
from .discovery import Motif
from .metrics import DistanceOptions, _pairwise_fill, dtw


@dataclass(frozen=True)
class PrunedMotifSet:
    """Rank-ordered motifs with pairwise center distance > 2R."""

    motifs: tuple[Motif, ...]


@dataclass(frozen=True)
class ClusterAssignment:
    """Per-motif cluster labels; -1 marks outliers."""

    labels: tuple[int, ...]
    cluster_count: int


def prune_k_motifs(
    motifs: list[Motif],
    radius: float,
    values: np.ndarray,
    opts: DistanceOptions = DistanceOptions(),
) -> PrunedMotifSet:
    """Greedy scan over cost-sorted motifs keeping centers more than 2R apart.

    The first motif is always accepted; each later one is accepted iff its
    center is farther than 2R from every accepted center.
    """
    values = np.asarray(values, dtype=np.float64)
    accepted: list[Motif] = []
    for motif in motifs:
        cvals = motif.center.slice(values)
        ok = True
        for prev in accepted:
            if dtw(cvals, prev.center.slice(values), opts) <= 2 * radius:
                ok = False
                break
        if ok:
            accepted.append(motif)
    return PrunedMotifSet(motifs=tuple(accepted))


def _seg_stats(values: np.ndarray, segments: list[Segment]):
    mins = np.array([s.slice(values).min() for s in segments])
    maxs = np.array([s.slice(values).max() for s in segments])
    return mins, maxs


def _stretched_upper_bound(a: np.ndarray, b: np.ndarray) -> float:
    """Normalized cost upper bound from the uniform-stretch alignment path."""
    n, m = a.shape[0], b.shape[0]
    k = max(n, m)
    steps = np.arange(k)
    ai = (steps * n) // k
    bj = (steps * m) // k
    total = float(np.abs(a[ai] - b[bj]).sum())
    # the optimal path has length >= k, so total/k bounds cost/len from above
    return total / k


def _center_distance_matrix(
    values: np.ndarray,
    centers: list[Segment],
    eps: float,
    opts: DistanceOptions,
) -> np.ndarray:
    """Pairwise center distances, exact only where cheap bounds cannot decide eps.

    Per-step cost is at least the gap between value ranges (lower bound) and at
    most the stretched-path average (upper bound); pairs settled by a bound get
    a stand-in value on the right side of eps.
    """
    k = len(centers)
    dmat = np.zeros((k, k), dtype=np.float64)
    if k < 2:
        return dmat
    mins, maxs = _seg_stats(values, centers)
    ii, jj = np.triu_indices(k, 1)
    gap = np.maximum(mins[ii] - maxs[jj], mins[jj] - maxs[ii])
    far = gap > eps
    need = np.flatnonzero(~far)
    flat = np.empty(ii.size, dtype=np.float64)
    flat[far] = gap[far]
    exact_i: list[int] = []
    for t in need:
        a = centers[ii[t]].slice(values)
        b = centers[jj[t]].slice(values)
        ub = _stretched_upper_bound(a, b)
        if ub <= eps:
            flat[t] = ub
        else:
            exact_i.append(int(t))
    if exact_i:
        idx = np.array(exact_i, dtype=np.int64)
        starts = np.array([s.start for s in centers], dtype=np.int64)
        lengths = np.array([s.length for s in centers], dtype=np.int64)
        band = -1 if opts.band is None else int(opts.band)
        sub = np.empty(idx.size, dtype=np.float64)
        _pairwise_fill(
            np.ascontiguousarray(values),
            starts,
            lengths,
            ii[idx].astype(np.int64),
            jj[idx].astype(np.int64),
            band,
            sub,
        )
        flat[idx] = sub
    dmat[ii, jj] = flat
    dmat[jj, ii] = flat
    return dmat


def dbscan_motifs(
    motifs: list[Motif],
    eps: float,
    min_pts: int,
    values: np.ndarray,
    opts: DistanceOptions = DistanceOptions(),
) -> ClusterAssignment:
    """Density clustering of motif centers under path-normalized DTW.

    A core point has >= min_pts neighbors within eps (itself included).
    Clusters are maximal density-connected sets, numbered by the input order of
    their first core point; unreachable non-core points get label -1.  Border
    points reachable from several clusters go to the first cluster processed.
    """
    if not eps > 0:
        raise ValueError("eps must be positive")
    if min_pts < 1:
        raise ValueError("min_pts must be >= 1")
    values = np.asarray(values, dtype=np.float64)
    n = len(motifs)
    if n == 0:
        return ClusterAssignment(labels=(), cluster_count=0)
    centers = [m.center for m in motifs]
    dmat = _center_distance_matrix(values, centers, eps, opts)
    unvisited = -2
    labels = np.full(n, unvisited, dtype=np.int64)
    cluster = 0
    for i in range(n):
        if labels[i] != unvisited:
            continue
        neighbors = np.flatnonzero(dmat[i] <= eps)
        if neighbors.size < min_pts:
            labels[i] = -1
            continue
        labels[i] = cluster
        seeds = deque(int(q) for q in neighbors if q != i)
        while seeds:
            q = seeds.popleft()
            if labels[q] == -1:
                labels[q] = cluster  # border point claimed by first cluster
            if labels[q] != unvisited:
                continue
            labels[q] = cluster
            q_neighbors = np.flatnonzero(dmat[q] <= eps)
            if q_neighbors.size >= min_pts:
                seeds.extend(int(r) for r in q_neighbors if labels[r] == unvisited or labels[r] == -1)
        cluster += 1
    return ClusterAssignment(labels=tuple(int(v) for v in labels), cluster_count=cluster)
