"""Command-line entry points: discover, synth, report.

Exit codes: 0 success, 2 input error, 3 config error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .core import (
    ColumnMissing,
    ConstantSeries,
    DiscoveryConfig,
    FileUnreadable,
    MotifPipelineError,
    SeriesTooShort,
    SpecInfeasible,
    TooFewSamples,
    WriteFailure,
)
from .discovery import discover
from .report import (
    MotifReport,
    build_report,
    emit_report,
    overlay_labels,
    render_plots,
    report_from_dict,
    report_to_dict,
)
from .selection import ClusterAssignment, PrunedMotifSet, dbscan_motifs, prune_k_motifs
from .synth import load_synth_spec, synth_trip
from .trips import PRESETS, TripSource, load_labels, load_trip

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CONFIG = 3

_INPUT_ERRORS = (FileUnreadable, TooFewSamples, ColumnMissing, SpecInfeasible, SeriesTooShort)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="drivemotifs",
        description="Variable-length motif discovery in telemetry time-series",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    d = sub.add_parser("discover", help="discover, rank, prune and cluster motifs in a trip")
    d.add_argument("input", help="delimited text file, one sample per row")
    d.add_argument("--column", type=int, default=None, help="value column index (default 0)")
    d.add_argument("--delimiter", default=None, help="field delimiter (default: whitespace)")
    d.add_argument("--rate", type=float, default=None, help="sampling rate in Hz (default 10)")
    d.add_argument("--window", type=int, default=20, help="sliding window size in samples")
    d.add_argument("--paa", type=int, default=2, help="frames per word")
    d.add_argument("--alphabet", type=int, default=5, help="symbol count")
    d.add_argument("--radius", type=float, default=0.1, help="motif radius in signal units")
    d.add_argument("--min-words", type=int, default=1, help="minimum pattern length in words")
    d.add_argument("--band", type=int, default=None, help="Sakoe-Chiba half-width in samples")
    d.add_argument("--labels", default=None, help="event label file (rows: time_s kind)")
    d.add_argument("--preset", choices=sorted(PRESETS), default=None,
                   help="named input layout (UAH accelerometer columns)")
    d.add_argument("--out", default="motif_report", help="output directory")
    d.add_argument("--eps", type=float, default=None, help="DBSCAN radius (default: --radius)")
    d.add_argument("--min-pts", type=int, default=3, help="DBSCAN core-point threshold")
    d.add_argument("--seed", type=int, default=None, help="echoed into the report")

    s = sub.add_parser("synth", help="generate a synthetic trip with planted maneuvers")
    s.add_argument("--spec", required=True, help="JSON trip description")
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--out", required=True, help="output directory")

    r = sub.add_parser("report", help="re-render plots from a saved report directory")
    r.add_argument("--in", dest="in_dir", required=True, help="directory with report.json")
    return parser


def _empty_report(name, n, cfg, rate, dropped, seed, mean, std) -> MotifReport:
    return build_report(
        trip_name=name,
        n_samples=n,
        cfg=cfg,
        motifs=[],
        pruned=PrunedMotifSet(motifs=()),
        clusters=ClusterAssignment(labels=(), cluster_count=0),
        mean=mean,
        std=std,
        values=np.zeros(1),
        sample_rate_hz=rate,
        dropped_rows=dropped,
        seed=seed,
    )


def _run_discover(args) -> int:
    preset = PRESETS.get(args.preset, {}) if args.preset else {}
    column = args.column if args.column is not None else preset.get("value_column", 0)
    delimiter = args.delimiter if args.delimiter is not None else preset.get("delimiter")
    rate = args.rate if args.rate is not None else preset.get("sample_rate_hz", 10.0)
    try:
        cfg = DiscoveryConfig(
            window_size=args.window,
            paa_size=args.paa,
            alphabet_size=args.alphabet,
            radius_r=args.radius,
            min_pattern_words=args.min_words,
            dtw_band=args.band,
            dbscan_eps=args.eps,
            dbscan_min_pts=args.min_pts,
        )
        if rate <= 0:
            raise ValueError("rate must be positive")
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    src = TripSource(
        path=args.input,
        delimiter=delimiter,
        value_column=column,
        sample_rate_hz=rate,
        name=Path(args.input).stem,
    )
    try:
        ts, dropped = load_trip(src, min_rows=cfg.window_size)
        labels = load_labels(args.labels) if args.labels else []
    except _INPUT_ERRORS as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    try:
        from .core import zscore_global

        _, mean, std = zscore_global(ts)
        motifs = discover(ts, cfg)
        pruned = prune_k_motifs(motifs, cfg.radius_r, ts.values)
        clusters = dbscan_motifs(motifs, cfg.eps, cfg.dbscan_min_pts, ts.values)
        rep = build_report(
            trip_name=ts.name,
            n_samples=len(ts),
            cfg=cfg,
            motifs=motifs,
            pruned=pruned,
            clusters=clusters,
            mean=mean,
            std=std,
            values=ts.values,
            sample_rate_hz=rate,
            dropped_rows=dropped,
            seed=args.seed,
        )
    except ConstantSeries:
        print("series is constant: no motifs", file=sys.stderr)
        rep = _empty_report(ts.name, len(ts), cfg, rate, dropped, args.seed,
                            mean=float(ts.values[0]), std=0.0)
    if labels:
        rep = overlay_labels(rep, labels)
    try:
        emit_report(rep, args.out, ts.values)
    except WriteFailure as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(
        f"{rep.trip_name}: {rep.candidate_count} motifs, "
        f"{rep.pruned_count} after pruning, {rep.cluster_count} clusters, "
        f"{rep.outlier_count} outliers -> {args.out}"
    )
    return EXIT_OK


def _run_synth(args) -> int:
    try:
        spec = load_synth_spec(args.spec)
    except OSError as exc:
        print(f"input error: cannot read {args.spec}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (KeyError, ValueError, json.JSONDecodeError) as exc:
        print(f"input error: bad synth spec: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        ts, truth = synth_trip(spec, args.seed)
    except SpecInfeasible as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
        (out / "trip.txt").write_text(
            "\n".join(repr(float(v)) for v in ts.values) + "\n", encoding="utf-8"
        )
        truth_doc = {
            "seed": args.seed,
            "sample_rate_hz": spec.sample_rate_hz,
            "segments": [{"start": s.start, "length": s.length} for s in truth],
        }
        (out / "ground_truth.json").write_text(
            json.dumps(truth_doc, sort_keys=True, indent=2) + "\n", encoding="utf-8"
        )
        tpls = list(spec.templates)
        if any(t.position is not None for t in tpls):
            tpls.sort(key=lambda t: t.position)
        label_rows = []
        for seg, tpl in zip(truth, tpls):
            t0 = seg.start / spec.sample_rate_hz
            if tpl.kind in ("brake", "brake_accel"):
                label_rows.append((t0, "brake"))
            if tpl.kind == "acceleration":
                label_rows.append((t0, "acceleration"))
            if tpl.kind == "brake_accel":
                label_rows.append((t0 + seg.length / 2 / spec.sample_rate_hz, "acceleration"))
            if tpl.kind == "lane_change":
                label_rows.append((t0, "turn"))
        (out / "labels.txt").write_text(
            "".join(f"{t} {kind}\n" for t, kind in sorted(label_rows)), encoding="utf-8"
        )
    except OSError as exc:
        print(f"input error: cannot write {out}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(f"wrote {len(ts)}-sample trip with {len(truth)} planted maneuvers -> {out}")
    return EXIT_OK


def _run_report(args) -> int:
    in_dir = Path(args.in_dir)
    try:
        data = json.loads((in_dir / "report.json").read_text(encoding="utf-8"))
        series = np.array(
            [float(line) for line in (in_dir / "series.txt").read_text().split()]
        )
    except OSError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"input error: malformed report: {exc}", file=sys.stderr)
        return EXIT_INPUT
    rep = report_from_dict(data)
    paths = render_plots(rep, series, in_dir)
    print(f"re-rendered {len(paths)} plots in {in_dir}")
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "discover":
            return _run_discover(args)
        if args.command == "synth":
            return _run_synth(args)
        return _run_report(args)
    except MotifPipelineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
