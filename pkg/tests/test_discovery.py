import math

import numpy as np
import pytest

from drivemotifs import (
    CandidatePattern,
    DegenerateContext,
    DiscoveryConfig,
    ManeuverTemplate,
    MdlContext,
    ModifiedWord,
    Motif,
    Segment,
    SynthSpec,
    TimeSeries,
    discover,
    dtw,
    enumerate_patterns,
    mdl_cost,
    overlap,
    radius_filter,
    synth_trip,
    trivial_prune,
)


def mk_words(values, window=10):
    words = []
    start = 0
    for v in values:
        words.append(ModifiedWord(word=v, start=start, span=window, run_count=1))
        start += 1
    return words


def test_enumerate_rejects_merged_duplicates():
    with pytest.raises(ValueError):
        enumerate_patterns(mk_words(["X", "X", "X"]))


def test_enumerate_xyxy():
    pats = enumerate_patterns(mk_words(["X", "Y", "X", "Y"]))
    by_words = {p.words: p for p in pats}
    assert set(by_words) == {("X",), ("Y",), ("X", "Y")}
    assert len(by_words[("X",)].occurrences) == 2
    assert len(by_words[("Y",)].occurrences) == 2
    assert len(by_words[("X", "Y")].occurrences) == 2


def test_enumerate_abcabd():
    pats = enumerate_patterns(mk_words(["A", "B", "C", "A", "B", "D"]))
    by_words = {p.words: len(p.occurrences) for p in pats}
    assert by_words == {("A",): 2, ("B",): 2, ("A", "B"): 2}


def test_enumerate_all_distinct_is_empty():
    assert enumerate_patterns(mk_words(["A", "B", "C"])) == []


def test_enumerate_materializes_sample_segments():
    words = [
        ModifiedWord(word="X", start=0, span=11, run_count=2),
        ModifiedWord(word="Y", start=2, span=10, run_count=1),
        ModifiedWord(word="X", start=3, span=12, run_count=3),
        ModifiedWord(word="Y", start=6, span=10, run_count=1),
    ]
    pats = {p.words: p for p in enumerate_patterns(words)}
    assert pats[("X",)].occurrences == (Segment(0, 11), Segment(3, 12))
    assert pats[("X", "Y")].occurrences == (Segment(0, 12), Segment(3, 13))


def test_enumerate_min_pattern_words():
    pats = enumerate_patterns(mk_words(["X", "Y", "X", "Y"]), min_pattern_words=2)
    assert {p.words for p in pats} == {("X", "Y")}


def test_mdl_cost_value():
    # 2*log2(4) + (10 - 6 + 3)*log2(5)
    expected = 2 * math.log2(4) + 7 * math.log2(5)
    assert expected == pytest.approx(20.253496664211536, abs=1e-12)
    got = mdl_cost(2, 3, MdlContext(total_words=10, distinct_words=4))
    assert got == pytest.approx(expected, abs=1e-12)


def test_mdl_cost_preconditions():
    ctx = MdlContext(total_words=10, distinct_words=4)
    with pytest.raises(ValueError):
        mdl_cost(0, 2, ctx)
    with pytest.raises(ValueError):
        mdl_cost(3, 1, ctx)
    with pytest.raises(DegenerateContext):
        mdl_cost(4, 3, ctx)  # 12 pattern words cannot fit in 10


def test_mdl_cost_decreases_with_support():
    ctx = MdlContext(total_words=100, distinct_words=5)
    assert mdl_cost(2, 4, ctx) < mdl_cost(2, 2, ctx)


def test_mdl_context_validation():
    with pytest.raises(ValueError):
        MdlContext(total_words=2, distinct_words=3)
    with pytest.raises(ValueError):
        MdlContext(total_words=0, distinct_words=0)


def _block_series(blocks, n=120):
    """Series of constant-valued blocks; DTW between blocks is exactly |level diff|."""
    vals = np.zeros(n)
    segs = []
    for start, length, level in blocks:
        vals[start:start + length] = level
        segs.append(Segment(start, length))
    return vals, segs


def test_radius_filter_identical_occurrences():
    vals, segs = _block_series([(0, 20, 0.3), (40, 20, 0.3)])
    pat = CandidatePattern(words=("q",), occurrences=tuple(segs))
    motif = radius_filter(pat, radius=0.1, values=vals)
    assert motif is not None
    assert len(motif.members) == 2
    for m in motif.members:
        assert dtw(m.slice(vals), motif.center.slice(vals)) == 0.0


def test_radius_filter_drops_far_occurrence():
    vals, segs = _block_series([(0, 20, 0.0), (40, 20, 0.05), (80, 20, 0.5)])
    pat = CandidatePattern(words=("q",), occurrences=tuple(segs))
    motif = radius_filter(pat, radius=0.1, values=vals)
    assert motif is not None
    assert set(motif.members) == {segs[0], segs[1]}
    assert motif.center == segs[0]


def test_radius_filter_scatter_returns_nothing():
    vals, segs = _block_series([(0, 20, 0.0), (40, 20, 0.2), (80, 20, 0.4)])
    pat = CandidatePattern(words=("q",), occurrences=tuple(segs))
    assert radius_filter(pat, radius=0.1, values=vals) is None


def test_radius_filter_result_always_within_radius():
    # levels that force the medoid to move after the first filter pass
    vals, segs = _block_series(
        [(0, 10, 0.0), (20, 10, 0.08), (40, 10, 0.16), (60, 10, 0.9)], n=120
    )
    pat = CandidatePattern(words=("q",), occurrences=tuple(segs))
    motif = radius_filter(pat, radius=0.1, values=vals)
    if motif is not None:
        cvals = motif.center.slice(vals)
        for m in motif.members:
            assert dtw(m.slice(vals), cvals) <= 0.1


def test_trivial_prune_chain():
    vals = np.zeros(100)
    vals[0:15] = 0.02
    vals[15:20] = 0.01
    vals[20:35] = 0.01
    vals[35:50] = 0.03
    members = (Segment(0, 20), Segment(15, 20), Segment(30, 20), Segment(60, 20))
    center = Segment(60, 20)
    # per-step distances to the all-zeros center: 0.0175, 0.01, 0.025, 0
    motif = Motif(center=center, members=members, pattern=("q",))
    pruned = trivial_prune(motif, vals)
    assert set(pruned.members) == {Segment(15, 20), center}


def test_trivial_prune_disjoint_unchanged():
    vals = np.zeros(100)
    members = (Segment(0, 20), Segment(30, 20), Segment(60, 20))
    motif = Motif(center=Segment(30, 20), members=members, pattern=("q",))
    assert trivial_prune(motif, vals).members == members


def test_trivial_prune_never_removes_center():
    vals = np.full(60, 0.07)
    # identical overlapping members; the tie rule alone would drop the later
    # start, which is the center here
    motif = Motif(
        center=Segment(10, 20),
        members=(Segment(0, 20), Segment(10, 20)),
        pattern=("q",),
    )
    pruned = trivial_prune(motif, vals)
    assert pruned.members == (Segment(10, 20),)


def test_trivial_prune_overlapping_pair():
    vals = np.zeros(80)
    vals[10:30] = 0.04
    motif = Motif(
        center=Segment(50, 20),
        members=(Segment(0, 20), Segment(10, 20), Segment(50, 20)),
        pattern=("q",),
    )
    # d(0,20)=0.02, d(10,20)=0.04: overlap resolved by dropping the farther one
    pruned = trivial_prune(motif, vals)
    assert set(pruned.members) == {Segment(0, 20), Segment(50, 20)}


def _covers(target: Segment, members, frac=0.5) -> bool:
    need = target.length * frac
    return any(
        min(target.end, m.end) - max(target.start, m.start) >= need for m in members
    )


def test_discover_planted_dips(clean_dip_trip, paper_cfg, _warm_numba):
    ts, truth = clean_dip_trip
    motifs = discover(ts, paper_cfg)
    assert motifs
    full_cover = [
        m for m in motifs if all(_covers(t, m.members) for t in truth)
    ]
    assert full_cover, "no motif covers all three planted dips"


def test_discover_motif_invariants_on_noise(paper_cfg, _warm_numba):
    rng = np.random.default_rng(17)
    ts = TimeSeries(rng.normal(0, 1, 200))
    motifs = discover(ts, paper_cfg)
    costs = [m.mdl_cost for m in motifs]
    assert costs == sorted(costs)
    for m in motifs:
        assert m.center in m.members
        cvals = m.center.slice(ts.values)
        for a in m.members:
            assert dtw(a.slice(ts.values), cvals) <= paper_cfg.radius_r
        for i, a in enumerate(m.members):
            for b in m.members[i + 1:]:
                assert not overlap(a, b)


def test_discover_variable_length_members(paper_cfg, _warm_numba):
    spec = SynthSpec(
        n_samples=2000,
        noise_sigma=0.0,
        min_gap=80,
        edge_margin=100,
        templates=(
            ManeuverTemplate(kind="brake", amplitude=0.3, duration=18),
            ManeuverTemplate(kind="brake", amplitude=0.3, duration=24),
        ),
    )
    ts, truth = synth_trip(spec, seed=9)
    motifs = discover(ts, paper_cfg)
    both = [
        m
        for m in motifs
        if all(_covers(t, m.members) for t in truth)
        and max(s.length for s in m.members) - min(s.length for s in m.members) >= 2
    ]
    assert both, "18- and 24-sample dips should land in one motif with different member lengths"


def test_discover_translation_equivariance(clean_dip_trip, paper_cfg, _warm_numba):
    ts, truth = clean_dip_trip
    pad = 25  # > window_size
    padded = TimeSeries(
        np.concatenate([np.zeros(pad), ts.values, np.zeros(pad)]),
        ts.sample_rate_hz,
    )
    base = discover(ts, paper_cfg)
    shifted = discover(padded, paper_cfg)
    assert len(base) == len(shifted)

    def dip_motifs(motifs, targets):
        return [m for m in motifs if all(_covers(t, m.members) for t in targets)]

    truth_shifted = [Segment(t.start + pad, t.length) for t in truth]
    base_dip = dip_motifs(base, truth)
    pad_dip = dip_motifs(shifted, truth_shifted)
    assert base_dip and pad_dip
    base_members = {(s.start, s.length) for s in base_dip[0].members}
    pad_members = {(s.start - pad, s.length) for s in pad_dip[0].members}
    assert base_members == pad_members


def test_discover_deterministic(clean_dip_trip, paper_cfg, _warm_numba):
    ts, _ = clean_dip_trip
    assert discover(ts, paper_cfg) == discover(ts, paper_cfg)


def test_discover_too_short(paper_cfg):
    with pytest.raises(Exception):
        discover(TimeSeries(np.arange(5.0)), paper_cfg)
