"""Synthetic trip generation with planted maneuver templates.

The generator is the ground-truth oracle for recall tests: it records exactly
where each template landed.  Output is deterministic per seed.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .core import Segment, SpecInfeasible, TimeSeries

TEMPLATE_KINDS = ("brake", "acceleration", "brake_accel", "lane_change")


@dataclass(frozen=True)
class ManeuverTemplate:
    kind: str
    amplitude: float
    duration: int
    position: int | None = None

    def __post_init__(self):
        if self.kind not in TEMPLATE_KINDS:
            raise ValueError(f"kind must be one of {TEMPLATE_KINDS}, got {self.kind!r}")
        if not self.amplitude > 0:
            raise ValueError("amplitude must be positive")
        if self.duration < 2:
            raise ValueError("duration must be >= 2")


@dataclass(frozen=True)
class SynthSpec:
    """Description of a synthetic trip: baseline noise plus planted templates."""

    n_samples: int
    sample_rate_hz: float = 10.0
    noise_sigma: float = 0.0
    min_gap: int = 40
    edge_margin: int = 50
    templates: tuple[ManeuverTemplate, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.n_samples < 1:
            raise ValueError("n_samples must be >= 1")
        if not self.sample_rate_hz > 0:
            raise ValueError("sample_rate_hz must be positive")
        if self.noise_sigma < 0:
            raise ValueError("noise_sigma must be >= 0")
        if self.min_gap < 1:
            raise ValueError("min_gap must be >= 1")
        if self.edge_margin < 0:
            raise ValueError("edge_margin must be >= 0")


def _pulse(duration: int) -> np.ndarray:
    """Plateau pulse in [0, 1]: raised-cosine shoulders around a flat hold."""
    if duration < 4:
        ramp_up = np.linspace(0.5, 1.0, duration // 2 + duration % 2)
        return np.concatenate([ramp_up, ramp_up[::-1][: duration // 2]])
    e = max(2, int(round(0.2 * duration)))
    e = min(e, duration // 2)
    ramp = 0.5 - 0.5 * np.cos(np.pi * np.arange(1, e + 1) / e)
    return np.concatenate([ramp, np.ones(duration - 2 * e), ramp[::-1]])


def template_values(kind: str, amplitude: float, duration: int) -> np.ndarray:
    """Sampled shape of one maneuver template."""
    if kind == "brake":
        return -amplitude * _pulse(duration)
    if kind == "acceleration":
        return amplitude * _pulse(duration)
    half = duration // 2
    first = _pulse(half)
    second = _pulse(duration - half)
    if kind == "brake_accel":
        return np.concatenate([-amplitude * first, amplitude * second])
    if kind == "lane_change":
        return np.concatenate([amplitude * first, -amplitude * second])
    raise ValueError(f"unknown template kind {kind!r}")


def synth_trip(spec: SynthSpec, seed: int) -> tuple[TimeSeries, list[Segment]]:
    """Generate a trip and the ground-truth segments of its planted templates.

    Templates without a position are placed left to right with at least
    min_gap samples between them and edge_margin samples clear at both ends;
    the leftover slack is distributed by the seeded generator.  Raises
    SpecInfeasible when the templates cannot fit.
    """
    rng = np.random.default_rng(seed)
    n = spec.n_samples
    if spec.noise_sigma > 0:
        x = rng.normal(0.0, spec.noise_sigma, n)
    else:
        x = np.zeros(n)

    fixed = [t for t in spec.templates if t.position is not None]
    auto = [t for t in spec.templates if t.position is None]
    if fixed and auto:
        raise SpecInfeasible("templates must either all carry positions or none")

    placements: list[tuple[ManeuverTemplate, int]] = []
    if fixed:
        ordered = sorted(fixed, key=lambda t: t.position)
        prev_end = None
        for t in ordered:
            if t.position < 0 or t.position + t.duration > n:
                raise SpecInfeasible(
                    f"template at {t.position} (duration {t.duration}) is out of bounds"
                )
            if prev_end is not None and t.position - prev_end < spec.min_gap:
                raise SpecInfeasible(
                    f"gap before position {t.position} is below min_gap {spec.min_gap}"
                )
            prev_end = t.position + t.duration
            placements.append((t, t.position))
    elif auto:
        k = len(auto)
        total = sum(t.duration for t in auto)
        slack = n - 2 * spec.edge_margin - total - (k - 1) * spec.min_gap
        if slack < 0:
            raise SpecInfeasible(
                f"{k} templates need {-slack} more samples than the trip provides"
            )
        offsets = np.floor(np.sort(rng.random(k)) * slack).astype(int)
        cursor = spec.edge_margin
        for t, off in zip(auto, offsets):
            start = cursor + int(off)
            placements.append((t, start))
            cursor += t.duration + spec.min_gap

    truth: list[Segment] = []
    for t, start in placements:
        shape = template_values(t.kind, t.amplitude, t.duration)
        x[start:start + t.duration] += shape
        truth.append(Segment(start=start, length=t.duration))
    truth.sort()
    ts = TimeSeries(x, spec.sample_rate_hz, name=f"synth-{seed}")
    return ts, truth


def spec_from_dict(data: dict) -> SynthSpec:
    """Build a SynthSpec from parsed JSON."""
    templates = tuple(
        ManeuverTemplate(
            kind=t["kind"],
            amplitude=float(t["amplitude"]),
            duration=int(t["duration"]),
            position=int(t["position"]) if "position" in t and t["position"] is not None else None,
        )
        for t in data.get("templates", [])
    )
    return SynthSpec(
        n_samples=int(data["n_samples"]),
        sample_rate_hz=float(data.get("sample_rate_hz", 10.0)),
        noise_sigma=float(data.get("noise_sigma", 0.0)),
        min_gap=int(data.get("min_gap", 40)),
        edge_margin=int(data.get("edge_margin", 50)),
        templates=templates,
    )


def load_synth_spec(path: str) -> SynthSpec:
    with open(path, "r", encoding="utf-8") as fh:
        return spec_from_dict(json.load(fh))
