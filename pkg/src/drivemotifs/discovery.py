"""The motif engine: pattern enumeration, radius filtering, overlap pruning, ranking.

Candidates come from repeated runs of consecutive merged words.  Each
candidate is materialized to sample segments, filtered against the radius
around a medoid center, cleaned of overlapping (trivially matching) members,
and finally ranked by a description-length cost in bits: frequent, long
patterns compress the word sequence best and rank first.

Member and center distances are computed on the series in its original units;
the z-normalized copy exists only for discretization.  A radius expressed in
signal units keeps membership decisions invariant under padding or trimming
of the trip.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .core import (
    DegenerateContext,
    DiscoveryConfig,
    Segment,
    SeriesTooShort,
    TimeSeries,
    overlap,
    zscore_global,
)
from .metrics import DistanceOptions, dtw, pairwise_dtw
from .symbolic import ModifiedWord, modified_sax


@dataclass(frozen=True)
class CandidatePattern:
    """A repeated run of consecutive merged words and where it occurs."""

    words: tuple[str, ...]
    occurrences: tuple[Segment, ...]


@dataclass(frozen=True)
class MdlContext:
    """Word-sequence statistics the description-length cost needs."""

    total_words: int
    distinct_words: int

    def __post_init__(self):
        if self.total_words < 1 or self.distinct_words < 1:
            raise ValueError("total_words and distinct_words must be >= 1")
        if self.distinct_words > self.total_words:
            raise ValueError("distinct_words cannot exceed total_words")


@dataclass(frozen=True)
class Motif:
    """A center segment, its members (center included) and a cost in bits."""

    center: Segment
    members: tuple[Segment, ...]
    pattern: tuple[str, ...]
    mdl_cost: float = math.nan


def enumerate_patterns(
    words: Sequence[ModifiedWord],
    min_pattern_words: int = 1,
) -> list[CandidatePattern]:
    """All repeated consecutive-word patterns, lengths increasing until none repeat.

    For each pattern length p starting at min_pattern_words, every distinct
    length-p word run occurring at >= 2 positions becomes a candidate; the scan
    stops at the first p with no repeats.  Occurrences span from the first
    word's start to the last word's end.
    """
    if len(words) == 0:
        raise ValueError("word sequence must be non-empty")
    vals = [w.word for w in words]
    for a, b in zip(vals, vals[1:]):
        if a == b:
            raise ValueError("consecutive merged words must be distinct")
    n = len(words)
    out: list[CandidatePattern] = []
    p = min_pattern_words
    while p <= n:
        positions: dict[tuple[str, ...], list[int]] = {}
        for i in range(n - p + 1):
            key = tuple(vals[i:i + p])
            positions.setdefault(key, []).append(i)
        found = False
        for key, pos in positions.items():
            if len(pos) < 2:
                continue
            found = True
            occs = []
            for i in pos:
                last = words[i + p - 1]
                start = words[i].start
                occs.append(Segment(start=start, length=last.start + last.span - start))
            out.append(CandidatePattern(words=key, occurrences=tuple(occs)))
        if not found:
            break
        p += 1
    return out


def mdl_cost(pattern_len_words: int, member_count: int, ctx: MdlContext) -> float:
    """Bits to encode the pattern once plus the word sequence with occurrences substituted.

    cost = p*log2(A) + (W - m*p + m)*log2(A+1) where W is the total word count
    and A the distinct word count.  Real-valued, no ceiling, to avoid ties.
    """
    p = pattern_len_words
    m = member_count
    if p < 1:
        raise ValueError("pattern_len_words must be >= 1")
    if m < 2:
        raise ValueError("member_count must be >= 2")
    a = ctx.distinct_words
    w = ctx.total_words
    if a < 1 or w < m * p:
        raise DegenerateContext(
            f"cannot encode {m} occurrences of a {p}-word pattern in {w} words"
        )
    return p * math.log2(a) + (w - m * p + m) * math.log2(a + 1)


def _medoid_index(dmat: np.ndarray, active: list[int]) -> int:
    sub = dmat[np.ix_(active, active)]
    sums = sub.sum(axis=1)
    # occurrences are in start order, so first argmin = smallest start on ties
    return active[int(np.argmin(sums))]


def _radius_filter_impl(
    pattern: CandidatePattern,
    radius: float,
    values: np.ndarray,
    opts: DistanceOptions,
) -> tuple[Motif, dict[Segment, float]] | None:
    occs = list(pattern.occurrences)
    if len(occs) < 2:
        return None
    dmat = pairwise_dtw(values, occs, opts)
    active = list(range(len(occs)))
    while True:
        ci = _medoid_index(dmat, active)
        kept = [i for i in active if dmat[i, ci] <= radius]
        if len(kept) < 2:
            return None
        if kept == active:
            members = tuple(occs[i] for i in active)
            dists = {occs[i]: float(dmat[i, ci]) for i in active}
            motif = Motif(center=occs[ci], members=members, pattern=pattern.words)
            return motif, dists
        active = kept


def radius_filter(
    pattern: CandidatePattern,
    radius: float,
    values: np.ndarray,
    opts: DistanceOptions = DistanceOptions(),
) -> Motif | None:
    """Keep occurrences within radius of a medoid center, or nothing.

    The medoid and the membership filter are iterated to a fixed point so the
    returned motif always satisfies d(member, center) <= radius.
    """
    result = _radius_filter_impl(pattern, radius, np.asarray(values, float), opts)
    return None if result is None else result[0]


def _trivial_prune_impl(motif: Motif, dists: dict[Segment, float]) -> Motif:
    members = sorted(motif.members)
    center = motif.center
    i = 0
    while i < len(members) - 1:
        a, b = members[i], members[i + 1]
        if b.start >= a.end:
            i += 1
            continue
        if a == center:
            members.pop(i + 1)
        elif b == center:
            members.pop(i)
        elif dists[a] > dists[b]:
            members.pop(i)
        else:
            # ties remove the later start, which is b in sorted order
            members.pop(i + 1)
    return replace(motif, members=tuple(members))


def trivial_prune(
    motif: Motif,
    values: np.ndarray,
    opts: DistanceOptions = DistanceOptions(),
) -> Motif:
    """Resolve overlapping members: drop the one farther from the center.

    Scans members in start order and removes greedily until no two members
    overlap.  The center is never removed.
    """
    values = np.asarray(values, dtype=np.float64)
    cvals = motif.center.slice(values)
    dists = {m: dtw(m.slice(values), cvals, opts) for m in motif.members}
    return _trivial_prune_impl(motif, dists)


def discover(ts: TimeSeries, cfg: DiscoveryConfig) -> list[Motif]:
    """Full pipeline: normalize, discretize, enumerate, filter, prune, rank.

    Returns motifs sorted by mdl_cost ascending with deterministic tie-breaking
    (member count descending, then center start, length and pattern).
    """
    if len(ts) < cfg.window_size:
        raise SeriesTooShort(f"series length {len(ts)} < window_size {cfg.window_size}")
    normalized, _, _ = zscore_global(ts)
    words = modified_sax(normalized, cfg)
    ctx = MdlContext(
        total_words=len(words),
        distinct_words=len({w.word for w in words}),
    )
    patterns = enumerate_patterns(words, cfg.min_pattern_words)
    opts = DistanceOptions(band=cfg.dtw_band)
    motifs: list[Motif] = []
    for pattern in patterns:
        filtered = _radius_filter_impl(pattern, cfg.radius_r, ts.values, opts)
        if filtered is None:
            continue
        motif, dists = filtered
        motif = _trivial_prune_impl(motif, dists)
        if len(motif.members) < 2:
            continue
        cost = mdl_cost(len(pattern.words), len(motif.members), ctx)
        motifs.append(replace(motif, mdl_cost=cost))
    motifs.sort(
        key=lambda m: (
            m.mdl_cost,
            -len(m.members),
            m.center.start,
            m.center.length,
            m.pattern,
        )
    )
    return motifs
