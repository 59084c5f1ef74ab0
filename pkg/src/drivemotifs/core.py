"""Time-series substrate: containers, segment arithmetic, normalization and PAA.

Everything here is immutable after construction and all operations are pure,
so values can be shared freely between parallel workers.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class MotifPipelineError(Exception):
    """Base class for every error raised by this package."""


class ConstantSeries(MotifPipelineError):
    """Series has zero variance; it cannot be discretized."""


class SeriesTooShort(MotifPipelineError):
    """Series is shorter than the operation requires."""


class IndivisibleSegment(MotifPipelineError):
    """Segment length is not divisible into equal frames."""


class AlphabetOutOfRange(MotifPipelineError):
    """Alphabet size outside the supported 2..26 range."""


class EmptyInput(MotifPipelineError):
    """Distance kernel received an empty sequence."""


class BandInfeasible(MotifPipelineError):
    """Alignment band excludes the end of the cost matrix."""


class LengthMismatch(MotifPipelineError):
    """Equal-length distance called on sequences of different length."""


class DegenerateContext(MotifPipelineError):
    """Description-length context cannot encode the candidate."""


class FileUnreadable(MotifPipelineError):
    """Input file could not be opened or read."""


class TooFewSamples(MotifPipelineError):
    """Input file yielded fewer valid rows than required."""


class ColumnMissing(MotifPipelineError):
    """Requested value column is absent from the input rows."""


class SpecInfeasible(MotifPipelineError):
    """Synthetic trip description cannot be realized."""


class WriteFailure(MotifPipelineError):
    """Report output could not be written."""


@dataclass(frozen=True)
class TimeSeries:
    """Uniformly sampled scalar signal.

    values are stored as a read-only float64 array; sample_rate_hz converts
    sample indices to seconds in reports.
    """

    values: np.ndarray
    sample_rate_hz: float = 10.0
    name: str = ""

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=np.float64)
        if arr.ndim != 1:
            raise ValueError(f"values must be 1-dimensional, got shape {arr.shape}")
        if arr.size == 0:
            raise ValueError("values must be non-empty")
        if not np.all(np.isfinite(arr)):
            raise ValueError("values must be finite")
        if not self.sample_rate_hz > 0:
            raise ValueError(f"sample_rate_hz must be positive, got {self.sample_rate_hz}")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    def __len__(self) -> int:
        return int(self.values.size)

    @property
    def duration_s(self) -> float:
        return len(self) / self.sample_rate_hz


@dataclass(frozen=True, order=True)
class Segment:
    """Contiguous subsequence reference: half-open sample interval [start, start+length)."""

    start: int
    length: int

    def __post_init__(self):
        if self.start < 0:
            raise ValueError(f"start must be >= 0, got {self.start}")
        if self.length < 1:
            raise ValueError(f"length must be >= 1, got {self.length}")

    @property
    def end(self) -> int:
        return self.start + self.length

    def slice(self, values: np.ndarray) -> np.ndarray:
        if self.end > values.shape[0]:
            raise ValueError(
                f"segment [{self.start}, {self.end}) exceeds series length {values.shape[0]}"
            )
        return values[self.start:self.end]


def overlap(a: Segment, b: Segment) -> bool:
    """True iff the half-open index intervals of a and b intersect."""
    return a.start < b.end and b.start < a.end


@dataclass(frozen=True)
class DiscoveryConfig:
    """Pipeline parameters.

    radius_r, dbscan_eps and all distances derived from them are expressed in
    the units of the input series (e.g. G for accelerometer trips); the global
    z-normalization only feeds the symbolic discretization.
    """

    window_size: int = 20
    paa_size: int = 2
    alphabet_size: int = 5
    radius_r: float = 0.1
    min_pattern_words: int = 1
    dtw_band: int | None = None
    dbscan_eps: float | None = None
    dbscan_min_pts: int = 3

    def __post_init__(self):
        if self.window_size < 1:
            raise ValueError("window_size must be >= 1")
        if self.paa_size < 1:
            raise ValueError("paa_size must be >= 1")
        if self.window_size % self.paa_size != 0:
            raise ValueError(
                f"window_size ({self.window_size}) must be divisible by paa_size ({self.paa_size})"
            )
        if not 2 <= self.alphabet_size <= 26:
            raise ValueError(f"alphabet_size must be in 2..26, got {self.alphabet_size}")
        if not self.radius_r > 0:
            raise ValueError("radius_r must be positive")
        if self.min_pattern_words < 1:
            raise ValueError("min_pattern_words must be >= 1")
        if self.dtw_band is not None and self.dtw_band < 1:
            raise ValueError("dtw_band must be >= 1 when set")
        if self.dbscan_eps is not None and not self.dbscan_eps > 0:
            raise ValueError("dbscan_eps must be positive when set")
        if self.dbscan_min_pts < 1:
            raise ValueError("dbscan_min_pts must be >= 1")

    @property
    def eps(self) -> float:
        """Effective DBSCAN neighborhood radius (defaults to radius_r)."""
        return self.radius_r if self.dbscan_eps is None else self.dbscan_eps


def zscore_global(ts: TimeSeries) -> tuple[TimeSeries, float, float]:
    """Normalize a whole series to mean 0 and population standard deviation 1.

    Normalization is global and applied once, never per window, so that
    amplitude differences between gentle and hard maneuvers survive
    discretization.  Returns (normalized series, mean, std) so reports can map
    symbol-space quantities back to physical units.
    """
    if len(ts) < 2:
        raise SeriesTooShort(f"need at least 2 samples, got {len(ts)}")
    mean = float(np.mean(ts.values))
    std = float(np.std(ts.values))
    if std == 0.0:
        raise ConstantSeries(f"series {ts.name!r} has zero variance")
    normalized = (ts.values - mean) / std
    return TimeSeries(normalized, ts.sample_rate_hz, ts.name), mean, std


def paa(series_values: np.ndarray, segment: Segment, paa_size: int) -> np.ndarray:
    """Piecewise aggregate approximation: means of paa_size equal-length frames."""
    if paa_size < 1:
        raise ValueError("paa_size must be >= 1")
    window = segment.slice(np.asarray(series_values, dtype=np.float64))
    if segment.length % paa_size != 0:
        raise IndivisibleSegment(
            f"segment length {segment.length} not divisible by paa_size {paa_size}"
        )
    return window.reshape(paa_size, -1).mean(axis=1)
