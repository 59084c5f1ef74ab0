"""drivemotifs: variable-length motif discovery for driving telemetry time-series."""

from .core import (
    AlphabetOutOfRange,
    BandInfeasible,
    ColumnMissing,
    ConstantSeries,
    DegenerateContext,
    DiscoveryConfig,
    EmptyInput,
    FileUnreadable,
    IndivisibleSegment,
    LengthMismatch,
    MotifPipelineError,
    Segment,
    SeriesTooShort,
    SpecInfeasible,
    TimeSeries,
    TooFewSamples,
    WriteFailure,
    overlap,
    paa,
    zscore_global,
)
from .discovery import (
    CandidatePattern,
    MdlContext,
    Motif,
    discover,
    enumerate_patterns,
    mdl_cost,
    radius_filter,
    trivial_prune,
)
from .metrics import DistanceOptions, dtw, euclid, pairwise_dtw
from .report import (
    MemberEntry,
    MotifEntry,
    MotifReport,
    build_report,
    emit_report,
    overlay_labels,
    report_from_dict,
    report_to_dict,
)
from .selection import ClusterAssignment, PrunedMotifSet, dbscan_motifs, prune_k_motifs
from .symbolic import (
    ALPHABET,
    ModifiedWord,
    SaxWord,
    breakpoints,
    expand_words,
    merge_runs,
    modified_sax,
    sax_word,
    window_words,
)
from .synth import ManeuverTemplate, SynthSpec, load_synth_spec, synth_trip, template_values
from .trips import PRESETS, EventLabel, TripSource, load_labels, load_trip

__version__ = "0.1.0"

__all__ = [
    "ALPHABET",
    "AlphabetOutOfRange",
    "BandInfeasible",
    "CandidatePattern",
    "ClusterAssignment",
    "ColumnMissing",
    "ConstantSeries",
    "DegenerateContext",
    "DiscoveryConfig",
    "DistanceOptions",
    "EmptyInput",
    "EventLabel",
    "FileUnreadable",
    "IndivisibleSegment",
    "LengthMismatch",
    "ManeuverTemplate",
    "MdlContext",
    "MemberEntry",
    "ModifiedWord",
    "Motif",
    "MotifEntry",
    "MotifPipelineError",
    "MotifReport",
    "PRESETS",
    "PrunedMotifSet",
    "SaxWord",
    "Segment",
    "SeriesTooShort",
    "SpecInfeasible",
    "SynthSpec",
    "TimeSeries",
    "TooFewSamples",
    "TripSource",
    "WriteFailure",
    "breakpoints",
    "build_report",
    "dbscan_motifs",
    "discover",
    "dtw",
    "emit_report",
    "enumerate_patterns",
    "euclid",
    "expand_words",
    "load_labels",
    "load_synth_spec",
    "load_trip",
    "mdl_cost",
    "merge_runs",
    "modified_sax",
    "overlap",
    "overlay_labels",
    "paa",
    "pairwise_dtw",
    "prune_k_motifs",
    "radius_filter",
    "report_from_dict",
    "report_to_dict",
    "sax_word",
    "synth_trip",
    "template_values",
    "trivial_prune",
    "window_words",
    "zscore_global",
]
