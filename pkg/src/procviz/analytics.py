"""Descriptive statistics and the data series behind all eight PVs.

Everything here is computed once, ahead of viewing: the exported bundle
is self-contained (it even embeds the snapshots so any-to-any diffs can
be answered later) and byte-deterministic for fixed inputs and
parameters.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass

from .diffs import (
    DiffScript,
    DiffUnit,
    SegmentLabel,
    added_removed_counts,
    diff,
    diff_texts,
    playback_frame,
)
from .identity import (
    IdentityMatrix,
    assign_initial_ids,
    line_identities_from_diffs,
    propagate_ids,
)
from .model import (
    DEFAULT_IDLE_GAP_MS,
    RevisionHistory,
    SessionKind,
    TimelineSegmentation,
    segment_timeline,
)
from .segmentation import (
    Granularity,
    Passage,
    SegmentationConfig,
    split_lines,
    split_paragraphs,
    split_sentences,
    tokenize_words,
)
from .similarity import build_profile, similarity

BUNDLE_SCHEMA = "pvbundle/1"
DEFAULT_THRESHOLD = 0.5
DEFAULT_TOP_K_WORDS = 25

MS_PER_MINUTE = 60000.0


class IndexOutOfRangeError(IndexError):
    """A snapshot index fell outside the history."""


@dataclass(frozen=True)
class DescriptiveStats:
    """Final-snapshot counts plus session timing (the summary table)."""

    total_characters: int
    total_words: int
    total_sentences: int
    total_paragraphs: int
    total_lines: int
    elapsed_ms: int
    active_ms: int
    avg_chars_per_minute: float

    def as_dict(self) -> dict:
        return {
            "total_characters": self.total_characters,
            "total_words": self.total_words,
            "total_sentences": self.total_sentences,
            "total_paragraphs": self.total_paragraphs,
            "total_lines": self.total_lines,
            "elapsed_ms": self.elapsed_ms,
            "active_ms": self.active_ms,
            "avg_chars_per_minute": self.avg_chars_per_minute,
        }


@dataclass(frozen=True)
class PVBundle:
    """Self-contained export consumed by the viewer (schema pvbundle/1)."""

    kind: str
    config: dict
    stats: DescriptiveStats
    snapshots: list[dict]
    pv1_frames: list[dict]
    pv2_area: dict[str, list[dict]]
    pv3_active: dict[str, list[list[str]]]
    passages: dict[str, list[list[list[str]]]]
    pv4_words: dict[str, list[list]]
    pv5_heatmap: dict
    pv6_series: list[dict]
    pv7_timeline: list[dict]
    pv8_executions: list[dict]

    def to_document(self) -> dict:
        return {
            "schema": BUNDLE_SCHEMA,
            "kind": self.kind,
            "config": self.config,
            "stats": self.stats.as_dict(),
            "snapshots": self.snapshots,
            "pv1_frames": self.pv1_frames,
            "pv2_area": self.pv2_area,
            "pv3_active": self.pv3_active,
            "passages": self.passages,
            "pv4_words": self.pv4_words,
            "pv5_heatmap": self.pv5_heatmap,
            "pv6_series": self.pv6_series,
            "pv7_timeline": self.pv7_timeline,
            "pv8_executions": self.pv8_executions,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_document(), ensure_ascii=False, indent=1) + "\n"

    def to_json_bytes(self) -> bytes:
        return self.to_json().encode("utf-8")


def bundle_from_document(doc: dict) -> PVBundle:
    if doc.get("schema") != BUNDLE_SCHEMA:
        raise ValueError(f"unsupported bundle schema: {doc.get('schema')!r}")
    return PVBundle(
        kind=doc["kind"],
        config=doc["config"],
        stats=DescriptiveStats(**doc["stats"]),
        snapshots=doc["snapshots"],
        pv1_frames=doc["pv1_frames"],
        pv2_area=doc["pv2_area"],
        pv3_active=doc["pv3_active"],
        passages=doc["passages"],
        pv4_words=doc["pv4_words"],
        pv5_heatmap=doc["pv5_heatmap"],
        pv6_series=doc["pv6_series"],
        pv7_timeline=doc["pv7_timeline"],
        pv8_executions=doc["pv8_executions"],
    )


def bundle_from_json(text: str) -> PVBundle:
    return bundle_from_document(json.loads(text))


def _chars_typed(h: RevisionHistory) -> int:
    return sum(
        added_removed_counts(prev.content, curr.content)[0]
        for prev, curr in zip(h.snapshots, h.snapshots[1:])
    )


def compute_stats(
    h: RevisionHistory, cfg: SegmentationConfig, seg: TimelineSegmentation
) -> DescriptiveStats:
    """Counts over the final snapshot; typing speed over active time only.

    Typed characters are the diff-derived additions across adjacent
    snapshot pairs, not the final length, so heavy rewriting shows up in
    the speed.
    """
    final = h.snapshots[-1].content
    active_ms = seg.total_active_ms
    typed = _chars_typed(h)
    avg = typed / (active_ms / MS_PER_MINUTE) if active_ms > 0 else 0.0
    return DescriptiveStats(
        total_characters=len(final),
        total_words=len(tokenize_words(final, cfg)),
        total_sentences=len(split_sentences(final, cfg)),
        total_paragraphs=len(split_paragraphs(final)),
        total_lines=len(final.splitlines()),
        elapsed_ms=h.elapsed_ms,
        active_ms=active_ms,
        avg_chars_per_minute=avg,
    )


def build_pv1_frames(h: RevisionHistory) -> list[dict]:
    """One playback frame per snapshot; frame 0 shows the first snapshot
    as entirely added."""
    frames = []
    prev = ""
    for snap in h.snapshots:
        spans = playback_frame(prev, snap.content)
        frames.append({"t": snap.t, "spans": [[label, text] for label, text in spans]})
        prev = snap.content
    return frames


def _first_appearance_order(m: IdentityMatrix) -> list[str]:
    order: list[str] = []
    seen: set[str] = set()
    for snap in m.snapshots:
        for pv in snap:
            if pv.id not in seen:
                seen.add(pv.id)
                order.append(pv.id)
    return order


def build_pv2_area(m: IdentityMatrix) -> list[dict]:
    """Per-ID character-size series over snapshot indices.

    Absent IDs contribute 0; stack order is order of first appearance,
    so the area chart stacks oldest passages at the bottom.
    """
    n = len(m.snapshots)
    sizes: dict[str, list[int]] = {pid: [0] * n for pid in _first_appearance_order(m)}
    for i, snap in enumerate(m.snapshots):
        for pv in snap:
            sizes[pv.id][i] += len(pv.passage.text)
    return [{"id": pid, "series": series} for pid, series in sizes.items()]


def build_pv3_active(m: IdentityMatrix) -> list[list[str]]:
    """IDs edited at each snapshot: new IDs, or same-ID text changes.

    Snapshot 0 marks every passage active.
    """
    active: list[list[str]] = []
    prev_texts: dict[str, str] = {}
    for i, snap in enumerate(m.snapshots):
        if i == 0:
            active.append([pv.id for pv in snap])
        else:
            active.append(
                [
                    pv.id
                    for pv in snap
                    if pv.id not in prev_texts or prev_texts[pv.id] != pv.passage.text
                ]
            )
        prev_texts = {pv.id: pv.passage.text for pv in snap}
    return active


def build_pv4_words(
    h: RevisionHistory, cfg: SegmentationConfig, top_k: int
) -> dict[str, list[list]]:
    """Word frequencies of the final snapshot, plus removed-word counts.

    Removed words come from tokenizing the removed spans of each adjacent
    character-level diff. Ranking is count descending, then lexicographic.
    """
    if top_k < 1:
        raise ValueError(f"top_k must be >= 1, got {top_k}")
    final_counts = Counter(tokenize_words(h.snapshots[-1].content, cfg))
    removed_counts: Counter[str] = Counter()
    for prev, curr in zip(h.snapshots, h.snapshots[1:]):
        script = diff(
            tokenize_words(prev.content, cfg),
            tokenize_words(curr.content, cfg),
            DiffUnit.WORD,
        )
        for seg in script.segments:
            if seg.label is SegmentLabel.REMOVED:
                removed_counts.update(seg.units)

    def ranked(counts: Counter[str]) -> list[list]:
        ordered = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
        return [[word, count] for word, count in ordered[:top_k]]

    return {"top": ranked(final_counts), "removed": ranked(removed_counts)}


def build_pv5_heatmap(final_passages: list[Passage], cfg: SegmentationConfig) -> dict:
    """Pairwise similarity matrix over the final snapshot's passages."""
    texts = [p.text for p in final_passages]
    profiles = [build_profile(t, cfg.ngram_n) for t in texts]
    k = len(profiles)
    matrix = [[0.0] * k for _ in range(k)]
    for i in range(k):
        matrix[i][i] = 1.0
        for j in range(i + 1, k):
            score = similarity(profiles[i], profiles[j])
            matrix[i][j] = score
            matrix[j][i] = score
    return {"texts": texts, "matrix": matrix}


def build_pv6_series(
    h: RevisionHistory, seg: TimelineSegmentation
) -> list[dict]:
    """Document length and typing rate per snapshot.

    The rate at index i is the characters added since i-1 divided by the
    gap in minutes; idle gaps report 0 so breaks do not show up as
    near-zero speeds.
    """
    series = []
    for i, snap in enumerate(h.snapshots):
        cpm = 0.0
        if i > 0:
            gap = snap.t - h.snapshots[i - 1].t
            if not seg.is_idle_gap(gap):
                added, _ = added_removed_counts(h.snapshots[i - 1].content, snap.content)
                cpm = added / (gap / MS_PER_MINUTE)
        series.append(
            {"t": snap.t, "doc_length": len(snap.content), "chars_per_minute": cpm}
        )
    return series


def build_pv7_timeline(h: RevisionHistory) -> list[dict]:
    """Characters added/removed per revision step; the first snapshot
    counts entirely as added."""
    timeline = []
    for i, snap in enumerate(h.snapshots):
        if i == 0:
            added, removed = len(snap.content), 0
        else:
            added, removed = added_removed_counts(
                h.snapshots[i - 1].content, snap.content
            )
        timeline.append({"t": snap.t, "chars_added": added, "chars_removed": removed})
    return timeline


def any_to_any_diff(
    h: RevisionHistory, i: int, j: int
) -> tuple[DiffScript, int, int]:
    """Line diff of snapshot i vs snapshot j (either order), with
    character-level added/removed counts."""
    n = len(h.snapshots)
    for idx in (i, j):
        if not 0 <= idx < n:
            raise IndexOutOfRangeError(f"snapshot index {idx} out of range [0, {n})")
    a, b = h.snapshots[i].content, h.snapshots[j].content
    script = diff_texts(a, b, DiffUnit.LINE)
    added, removed = added_removed_counts(a, b)
    return script, added, removed


def _identity_matrices(
    h: RevisionHistory, cfg: SegmentationConfig, threshold: float, one_to_one: bool
) -> dict[str, IdentityMatrix]:
    contents = h.contents()
    if h.kind is SessionKind.CODE:
        return {Granularity.LINE.value: line_identities_from_diffs(h)}
    matrices = {}
    for granularity, splitter in (
        (Granularity.PARAGRAPH, lambda c: split_paragraphs(c)),
        (Granularity.SENTENCE, lambda c: split_sentences(c, cfg)),
    ):
        initial = assign_initial_ids([splitter(c) for c in contents], granularity)
        matrices[granularity.value] = propagate_ids(initial, cfg, threshold, one_to_one)
    return matrices


def _pv5_passages(h: RevisionHistory, cfg: SegmentationConfig) -> list[Passage]:
    final = h.snapshots[-1].content
    if h.kind is SessionKind.CODE:
        return [p for p in split_lines(final) if p.text]
    return split_sentences(final, cfg)


def build_bundle(
    h: RevisionHistory,
    cfg: SegmentationConfig | None = None,
    threshold: float = DEFAULT_THRESHOLD,
    idle_gap_ms: int = DEFAULT_IDLE_GAP_MS,
    top_k: int = DEFAULT_TOP_K_WORDS,
    one_to_one: bool = True,
) -> PVBundle:
    """Assemble the full PV bundle for one session.

    Text sessions track paragraph and sentence identities; code sessions
    track line identities via diffs. All parameters are echoed into the
    bundle so a render is reproducible.
    """
    cfg = cfg or SegmentationConfig()
    seg = segment_timeline(h, idle_gap_ms)
    matrices = _identity_matrices(h, cfg, threshold, one_to_one)
    return PVBundle(
        kind=h.kind.value,
        config={
            "capture_interval_ms": h.capture_interval_ms,
            "idle_gap_ms": idle_gap_ms,
            "matching": "one-to-one" if one_to_one else "per-passage",
            "ngram_n": cfg.ngram_n,
            "sentence_delimiters": sorted(cfg.sentence_delimiters),
            "threshold": threshold,
            "top_k_words": top_k,
            "word_delimiters": sorted(cfg.word_delimiters),
        },
        stats=compute_stats(h, cfg, seg),
        snapshots=[{"t": s.t, "content": s.content} for s in h.snapshots],
        pv1_frames=build_pv1_frames(h),
        pv2_area={g: build_pv2_area(m) for g, m in matrices.items()},
        pv3_active={g: build_pv3_active(m) for g, m in matrices.items()},
        passages={
            g: [[[pv.id, pv.passage.text] for pv in snap] for snap in m.snapshots]
            for g, m in matrices.items()
        },
        pv4_words=build_pv4_words(h, cfg, top_k),
        pv5_heatmap=build_pv5_heatmap(_pv5_passages(h, cfg), cfg),
        pv6_series=build_pv6_series(h, seg),
        pv7_timeline=build_pv7_timeline(h),
        pv8_executions=[
            {"t": ev.t, "success": ev.success, "detail": ev.detail}
            for ev in h.executions
        ],
    )
