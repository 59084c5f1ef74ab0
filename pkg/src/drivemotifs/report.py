"""Report assembly and emission: JSON report, summary table, per-motif plots.

Reports carry sample indices for machines and seconds for humans, always both.
Emission is byte-deterministic for a fixed input: keys are sorted, floats use
repr, figures get a fixed hash salt and no timestamp metadata.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field, replace

import numpy as np

from .core import DiscoveryConfig, Segment, WriteFailure
from .discovery import Motif
from .selection import ClusterAssignment, PrunedMotifSet
from .trips import EventLabel

SVG_HASH_SALT = "drivemotifs"


@dataclass(frozen=True)
class MemberEntry:
    start: int
    length: int
    start_s: float
    duration_s: float
    distance_to_center: float
    labels: tuple[EventLabel, ...] = ()


@dataclass(frozen=True)
class MotifEntry:
    rank: int
    mdl_cost: float
    pattern: tuple[str, ...]
    cluster_label: int
    center: MemberEntry
    members: tuple[MemberEntry, ...]


@dataclass(frozen=True)
class MotifReport:
    trip_name: str
    n_samples: int
    sample_rate_hz: float
    dropped_rows: int
    mean: float
    std: float
    seed: int | None
    config: DiscoveryConfig
    candidate_count: int
    cluster_count: int
    outlier_count: int
    motifs: tuple[MotifEntry, ...]
    outlier_motifs: tuple[MemberEntry, ...]
    unmatched_labels: tuple[EventLabel, ...] = ()

    @property
    def pruned_count(self) -> int:
        return len(self.motifs)


def _member_entry(seg: Segment, rate: float, dist: float) -> MemberEntry:
    return MemberEntry(
        start=seg.start,
        length=seg.length,
        start_s=seg.start / rate,
        duration_s=seg.length / rate,
        distance_to_center=dist,
    )


def build_report(
    trip_name: str,
    n_samples: int,
    cfg: DiscoveryConfig,
    motifs: list[Motif],
    pruned: PrunedMotifSet,
    clusters: ClusterAssignment,
    mean: float,
    std: float,
    values: np.ndarray,
    sample_rate_hz: float,
    dropped_rows: int = 0,
    seed: int | None = None,
) -> MotifReport:
    """Assemble the report for one trip from the pipeline outputs."""
    from .metrics import dtw

    rate = sample_rate_hz
    cluster_of = {m: c for m, c in zip(motifs, clusters.labels)}
    entries = []
    for rank, motif in enumerate(pruned.motifs, start=1):
        cvals = motif.center.slice(values)
        members = tuple(
            _member_entry(seg, rate, 0.0 if seg == motif.center else dtw(seg.slice(values), cvals))
            for seg in motif.members
        )
        entries.append(
            MotifEntry(
                rank=rank,
                mdl_cost=motif.mdl_cost,
                pattern=motif.pattern,
                cluster_label=cluster_of.get(motif, -1),
                center=_member_entry(motif.center, rate, 0.0),
                members=members,
            )
        )
    outliers = tuple(
        _member_entry(m.center, rate, 0.0)
        for m, label in zip(motifs, clusters.labels)
        if label == -1
    )
    return MotifReport(
        trip_name=trip_name,
        n_samples=n_samples,
        sample_rate_hz=rate,
        dropped_rows=dropped_rows,
        mean=mean,
        std=std,
        seed=seed,
        config=cfg,
        candidate_count=len(motifs),
        cluster_count=clusters.cluster_count,
        outlier_count=sum(1 for c in clusters.labels if c == -1),
        motifs=tuple(entries),
        outlier_motifs=outliers,
    )


def overlay_labels(report: MotifReport, labels: list[EventLabel]) -> MotifReport:
    """Attach event labels to the members whose time span contains them.

    Annotation only: motif counts and member segments never change.  Labels
    falling inside no member are collected in unmatched_labels.
    """
    matched: set[int] = set()
    new_entries = []
    for entry in report.motifs:
        new_members = []
        for member in entry.members:
            hit_idx = [
                k
                for k, lab in enumerate(labels)
                if member.start_s <= lab.time_s < member.start_s + member.duration_s
            ]
            matched.update(hit_idx)
            new_members.append(replace(member, labels=tuple(labels[k] for k in hit_idx)))
        new_entries.append(replace(entry, members=tuple(new_members)))
    unmatched = tuple(lab for k, lab in enumerate(labels) if k not in matched)
    return replace(report, motifs=tuple(new_entries), unmatched_labels=unmatched)


def _label_dict(lab: EventLabel) -> dict:
    return {"time_s": lab.time_s, "kind": lab.kind}


def _member_dict(m: MemberEntry) -> dict:
    return {
        "start": m.start,
        "length": m.length,
        "start_s": m.start_s,
        "duration_s": m.duration_s,
        "distance_to_center": m.distance_to_center,
        "labels": [_label_dict(l) for l in m.labels],
    }


def report_to_dict(report: MotifReport) -> dict:
    cfg = report.config
    return {
        "trip_name": report.trip_name,
        "n_samples": report.n_samples,
        "sample_rate_hz": report.sample_rate_hz,
        "dropped_rows": report.dropped_rows,
        "mean": report.mean,
        "std": report.std,
        "seed": report.seed,
        "config": {
            "window_size": cfg.window_size,
            "paa_size": cfg.paa_size,
            "alphabet_size": cfg.alphabet_size,
            "radius_r": cfg.radius_r,
            "min_pattern_words": cfg.min_pattern_words,
            "dtw_band": cfg.dtw_band,
            "dbscan_eps": cfg.eps,
            "dbscan_min_pts": cfg.dbscan_min_pts,
        },
        "counts": {
            "candidates": report.candidate_count,
            "pruned": report.pruned_count,
            "clusters": report.cluster_count,
            "outliers": report.outlier_count,
        },
        "motifs": [
            {
                "rank": e.rank,
                "mdl_cost": e.mdl_cost,
                "pattern": list(e.pattern),
                "cluster_label": e.cluster_label,
                "center": _member_dict(e.center),
                "members": [_member_dict(m) for m in e.members],
            }
            for e in report.motifs
        ],
        "outlier_motifs": [_member_dict(m) for m in report.outlier_motifs],
        "unmatched_labels": [_label_dict(l) for l in report.unmatched_labels],
    }


def report_from_dict(data: dict) -> MotifReport:
    cfg = DiscoveryConfig(
        window_size=data["config"]["window_size"],
        paa_size=data["config"]["paa_size"],
        alphabet_size=data["config"]["alphabet_size"],
        radius_r=data["config"]["radius_r"],
        min_pattern_words=data["config"]["min_pattern_words"],
        dtw_band=data["config"]["dtw_band"],
        dbscan_eps=data["config"]["dbscan_eps"],
        dbscan_min_pts=data["config"]["dbscan_min_pts"],
    )

    def member(d: dict) -> MemberEntry:
        return MemberEntry(
            start=d["start"],
            length=d["length"],
            start_s=d["start_s"],
            duration_s=d["duration_s"],
            distance_to_center=d["distance_to_center"],
            labels=tuple(EventLabel(l["time_s"], l["kind"]) for l in d["labels"]),
        )

    return MotifReport(
        trip_name=data["trip_name"],
        n_samples=data["n_samples"],
        sample_rate_hz=data["sample_rate_hz"],
        dropped_rows=data["dropped_rows"],
        mean=data["mean"],
        std=data["std"],
        seed=data["seed"],
        config=cfg,
        candidate_count=data["counts"]["candidates"],
        cluster_count=data["counts"]["clusters"],
        outlier_count=data["counts"]["outliers"],
        motifs=tuple(
            MotifEntry(
                rank=e["rank"],
                mdl_cost=e["mdl_cost"],
                pattern=tuple(e["pattern"]),
                cluster_label=e["cluster_label"],
                center=member(e["center"]),
                members=tuple(member(m) for m in e["members"]),
            )
            for e in data["motifs"]
        ),
        outlier_motifs=tuple(member(m) for m in data["outlier_motifs"]),
        unmatched_labels=tuple(
            EventLabel(l["time_s"], l["kind"]) for l in data["unmatched_labels"]
        ),
    )


def _summary_csv(report: MotifReport) -> str:
    kinds = sorted(
        {lab.kind for e in report.motifs for m in e.members for lab in m.labels}
    )
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ["trip", "motifs", "motifs_after_pruning", "dbscan_clusters", "dbscan_outliers", "label_kinds"]
    )
    writer.writerow(
        [
            report.trip_name,
            report.candidate_count,
            report.pruned_count,
            report.cluster_count,
            report.outlier_count,
            ";".join(kinds),
        ]
    )
    return buf.getvalue()


def render_plots(report: MotifReport, values: np.ndarray, out_dir) -> list:
    """One SVG per pruned motif: members overlaid with event-label markers."""
    import matplotlib

    matplotlib.use("Agg", force=False)
    import matplotlib.pyplot as plt

    plt.rcParams["svg.hashsalt"] = SVG_HASH_SALT
    rate = report.sample_rate_hz
    paths = []
    for entry in report.motifs:
        fig, ax = plt.subplots(figsize=(8, 4))
        for member in entry.members:
            seg = values[member.start:member.start + member.length]
            t = np.arange(seg.size) / rate
            is_center = member.start == entry.center.start and member.length == entry.center.length
            ax.plot(
                t,
                seg,
                linewidth=2.0 if is_center else 1.0,
                alpha=1.0 if is_center else 0.6,
                color="tab:red" if is_center else "tab:blue",
            )
            for lab in member.labels:
                lt = lab.time_s - member.start_s
                idx = min(int(round(lt * rate)), seg.size - 1)
                ax.scatter([lt], [seg[idx]], marker="v", color="tab:green", zorder=5)
        ax.set_xlabel("time within member (s)")
        ax.set_ylabel("signal")
        ax.set_title(
            f"motif {entry.rank}: cost {entry.mdl_cost:.2f} bits, "
            f"{len(entry.members)} members"
        )
        path = out_dir / f"motif_{entry.rank:03d}.svg"
        try:
            fig.savefig(path, format="svg", metadata={"Date": None})
        except OSError as exc:
            raise WriteFailure(f"cannot write {path}: {exc}") from exc
        finally:
            plt.close(fig)
        paths.append(path)
    return paths


def emit_report(report: MotifReport, out_dir, values: np.ndarray) -> list:
    """Write report.json, summary.csv, series.txt and one SVG per pruned motif.

    series.txt stores the trip values so plots can be re-rendered from the
    report directory alone.
    """
    from pathlib import Path

    out_dir = Path(out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        report_path = out_dir / "report.json"
        report_path.write_text(
            json.dumps(report_to_dict(report), sort_keys=True, indent=2) + "\n",
            encoding="utf-8",
        )
        summary_path = out_dir / "summary.csv"
        summary_path.write_text(_summary_csv(report), encoding="utf-8")
        series_path = out_dir / "series.txt"
        series_path.write_text(
            "\n".join(repr(float(v)) for v in values) + "\n", encoding="utf-8"
        )
    except OSError as exc:
        raise WriteFailure(f"cannot write to {out_dir}: {exc}") from exc
    paths = [report_path, summary_path, series_path]
    paths.extend(render_plots(report, np.asarray(values, dtype=np.float64), out_dir))
    return paths
