"""Local-first revision-history capture and process-visualization toolchain.

Capture timestamped snapshots of a file as it is edited, reconstruct
passage identities across revisions, compute descriptive statistics and
the data series behind eight process visualizations, and persist sessions
in an encrypted container. The exported bundle is rendered by the
companion browser viewer.
"""

from .analytics import (
    DescriptiveStats,
    PVBundle,
    build_bundle,
    bundle_from_json,
    compute_stats,
)
from .diffs import DiffScript, DiffUnit, SegmentLabel, added_removed_counts, diff
from .identity import (
    IdentityMatrix,
    assign_initial_ids,
    line_identities_from_diffs,
    passage_origin_times,
    propagate_ids,
)
from .model import (
    ExecutionEvent,
    RevisionHistory,
    SessionKind,
    Snapshot,
    TimelineSegmentation,
    segment_timeline,
    validate_history,
)
from .segmentation import (
    Granularity,
    Passage,
    SegmentationConfig,
    char_ngrams,
    split_lines,
    split_paragraphs,
    split_sentences,
    tokenize_words,
)
from .similarity import NGramProfile, build_profile, similarity

__version__ = "0.1.0"

__all__ = [
    "DescriptiveStats",
    "PVBundle",
    "build_bundle",
    "bundle_from_json",
    "compute_stats",
    "DiffScript",
    "DiffUnit",
    "SegmentLabel",
    "added_removed_counts",
    "diff",
    "IdentityMatrix",
    "assign_initial_ids",
    "line_identities_from_diffs",
    "passage_origin_times",
    "propagate_ids",
    "ExecutionEvent",
    "RevisionHistory",
    "SessionKind",
    "Snapshot",
    "TimelineSegmentation",
    "segment_timeline",
    "validate_history",
    "Granularity",
    "Passage",
    "SegmentationConfig",
    "char_ngrams",
    "split_lines",
    "split_paragraphs",
    "split_sentences",
    "tokenize_words",
    "NGramProfile",
    "build_profile",
    "similarity",
]
