"""Trip ingestion from delimited text files, plus event-label files.

The UAH-DriveSet accelerometer layout lives in named presets rather than in
code paths: RAW_ACCELEROMETERS.txt rows are space-separated with columns
[0] timestamp, [1] system-active flag, [2..4] raw x/y/z acceleration (G),
[5..7] Kalman-filtered x/y/z acceleration, [8..10] roll/pitch/yaw.  The
sampling rate is declared, never inferred, because the file timestamps jitter.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import ColumnMissing, FileUnreadable, TimeSeries, TooFewSamples

LABEL_KINDS = ("brake", "acceleration", "turn", "other")

_KIND_ALIASES = {
    "brake": "brake",
    "braking": "brake",
    "acceleration": "acceleration",
    "accel": "acceleration",
    "accelerating": "acceleration",
    "turn": "turn",
    "turning": "turn",
}


@dataclass(frozen=True)
class TripSource:
    """Where and how to read one trip."""

    path: str
    delimiter: str | None = None  # None splits on any whitespace
    value_column: int = 0
    timestamp_column: int | None = None  # parsed files may carry one; it is not used
    sample_rate_hz: float = 10.0
    name: str = ""


@dataclass(frozen=True)
class EventLabel:
    """A labelled event start, e.g. from a threshold-based detector."""

    time_s: float
    kind: str

    def __post_init__(self):
        if self.kind not in LABEL_KINDS:
            raise ValueError(f"kind must be one of {LABEL_KINDS}, got {self.kind!r}")


# preset name -> TripSource field overrides
PRESETS: dict[str, dict] = {
    # longitudinal acceleration: Kalman-filtered z column
    "uah-lon": {"delimiter": None, "value_column": 7, "sample_rate_hz": 10.0},
    # lateral acceleration: Kalman-filtered y column
    "uah-lat": {"delimiter": None, "value_column": 6, "sample_rate_hz": 10.0},
}


def load_trip(src: TripSource, min_rows: int = 1) -> tuple[TimeSeries, int]:
    """Read one value column from a delimited text file.

    Blank rows, rows missing the column and rows whose value does not parse to
    a finite float are dropped and counted.  Returns (series, dropped_count).
    """
    try:
        with open(src.path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise FileUnreadable(f"cannot read {src.path}: {exc}") from exc
    values: list[float] = []
    dropped = 0
    column_seen = False
    data_rows = 0
    for line in lines:
        line = line.strip()
        if not line:
            continue
        data_rows += 1
        parts = line.split(src.delimiter)
        if src.value_column >= len(parts):
            dropped += 1
            continue
        column_seen = True
        try:
            v = float(parts[src.value_column])
        except ValueError:
            dropped += 1
            continue
        if not math.isfinite(v):
            dropped += 1
            continue
        values.append(v)
    if data_rows > 0 and not column_seen:
        raise ColumnMissing(
            f"column {src.value_column} absent from every row of {src.path}"
        )
    if len(values) < min_rows:
        raise TooFewSamples(
            f"{src.path}: {len(values)} valid rows (dropped {dropped}), need >= {min_rows}"
        )
    name = src.name or str(src.path)
    return TimeSeries(np.array(values), src.sample_rate_hz, name), dropped


def load_labels(path: str) -> list[EventLabel]:
    """Read event labels from rows of "time_s kind" (whitespace or comma separated).

    Unknown kinds map to "other"; rows that do not parse are skipped.
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise FileUnreadable(f"cannot read {path}: {exc}") from exc
    labels: list[EventLabel] = []
    for line in lines:
        parts = line.replace(",", " ").split()
        if len(parts) < 2:
            continue
        try:
            t = float(parts[0])
        except ValueError:
            continue
        kind = _KIND_ALIASES.get(parts[1].lower(), "other")
        labels.append(EventLabel(time_s=t, kind=kind))
    return labels
