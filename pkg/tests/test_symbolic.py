import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from drivemotifs import (
    AlphabetOutOfRange,
    DiscoveryConfig,
    Segment,
    SeriesTooShort,
    TimeSeries,
    breakpoints,
    expand_words,
    merge_runs,
    modified_sax,
    sax_word,
    window_words,
)


def test_breakpoints_alphabet_2():
    np.testing.assert_allclose(breakpoints(2), [0.0], atol=1e-12)


def test_breakpoints_alphabet_4():
    np.testing.assert_allclose(breakpoints(4), [-0.6744897502, 0.0, 0.6744897502], atol=1e-3)


def test_breakpoints_alphabet_5():
    np.testing.assert_allclose(
        breakpoints(5), [-0.8416212336, -0.2533471031, 0.2533471031, 0.8416212336], atol=1e-3
    )


def test_breakpoints_out_of_range():
    with pytest.raises(AlphabetOutOfRange):
        breakpoints(1)
    with pytest.raises(AlphabetOutOfRange):
        breakpoints(27)


@given(st.integers(min_value=2, max_value=26))
def test_breakpoints_increasing_and_symmetric(a):
    bps = breakpoints(a)
    assert len(bps) == a - 1
    assert np.all(np.diff(bps) > 0)
    np.testing.assert_allclose(bps, -bps[::-1], atol=1e-12)


def test_median_quantile_is_zero():
    # inverse CDF at 0.5 is exactly 0, so even alphabets split at 0
    assert breakpoints(2)[0] == 0.0
    assert breakpoints(4)[1] == 0.0


def test_sax_word_extreme_tails():
    vals = np.array([-2.0, -2.0, 2.0, 2.0])
    assert sax_word(vals, Segment(0, 4), 2, breakpoints(5)) == "ae"


def test_sax_word_center():
    vals = np.zeros(4)
    assert sax_word(vals, Segment(0, 4), 2, breakpoints(5)) == "cc"


def test_sax_word_interval_lookup():
    vals = np.array([-0.5, -0.5, 0.3, 0.3])
    assert sax_word(vals, Segment(0, 4), 2, breakpoints(5)) == "bd"


def test_sax_word_boundary_goes_up():
    bps = breakpoints(2)  # [0.0]
    vals = np.zeros(2)
    assert sax_word(vals, Segment(0, 2), 2, bps) == "bb"


def test_merge_runs_spans():
    words = ["abc", "abc", "cde", "fde", "fde", "fde"]
    merged = merge_runs(words, window_size=20)
    assert [m.word for m in merged] == ["abc", "cde", "fde"]
    assert [m.span for m in merged] == [21, 20, 22]  # n+1, n, n+2
    assert [m.run_count for m in merged] == [2, 1, 3]
    assert [m.start for m in merged] == [0, 2, 3]


def test_merge_runs_single_run():
    merged = merge_runs(["aa"] * 7, window_size=10)
    assert len(merged) == 1
    assert merged[0].run_count == 7
    assert merged[0].span == 16


def test_merge_runs_alternating():
    words = ["ab", "ba"] * 4
    merged = merge_runs(words, window_size=6)
    assert len(merged) == len(words)
    assert all(m.span == 6 for m in merged)


@given(st.lists(st.sampled_from(["aa", "ab", "ba", "bb"]), min_size=1, max_size=80))
def test_merge_roundtrip_and_bookkeeping(words):
    merged = merge_runs(words, window_size=8)
    assert expand_words(merged) == list(words)
    assert sum(m.run_count for m in merged) == len(words)
    for prev, cur in zip(merged, merged[1:]):
        assert prev.word != cur.word
        assert cur.start == prev.start + prev.run_count
    for m in merged:
        assert m.span == 8 + m.run_count - 1


def test_modified_sax_on_series(paper_cfg):
    rng = np.random.default_rng(5)
    ts = TimeSeries(rng.normal(0, 1, 400))
    raw = window_words(ts.values, paper_cfg)
    merged = modified_sax(ts, paper_cfg)
    assert expand_words(merged) == raw
    assert sum(m.run_count for m in merged) == len(ts) - paper_cfg.window_size + 1
    assert len(merged) <= len(raw)


def test_modified_sax_too_short(paper_cfg):
    with pytest.raises(SeriesTooShort):
        modified_sax(TimeSeries(np.arange(10.0)), paper_cfg)


def test_window_words_matches_sax_word(paper_cfg):
    rng = np.random.default_rng(11)
    vals = rng.normal(0, 1, 120)
    bps = breakpoints(paper_cfg.alphabet_size)
    fast = window_words(vals, paper_cfg)
    slow = [
        sax_word(vals, Segment(s, paper_cfg.window_size), paper_cfg.paa_size, bps)
        for s in range(len(vals) - paper_cfg.window_size + 1)
    ]
    assert fast == slow
