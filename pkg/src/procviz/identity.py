"""Propagate passage identities backward across revisions.

Every passage in every snapshot starts with a fresh unique ID. Working
from the latest adjacent snapshot pair backward, a passage at time t
adopts the ID of its best-matching passage at time t+1 when their n-gram
similarity exceeds the threshold, so one paragraph/sentence keeps a
single ID over its whole life. Matching is one-to-one greedy by
descending similarity by default (per-snapshot ID uniqueness is what
stacked charts key on); the many-to-one per-passage variant is kept
behind a flag for comparison.

Code lines are connected through line-level diffs instead: all-to-all
line similarity is meaningless when two loops differ by one character,
so lines aligned by common diff segments adopt their counterparts' IDs.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import count
from typing import Sequence

from .diffs import DiffUnit, SegmentLabel, diff
from .model import RevisionHistory, SessionKind
from .segmentation import Granularity, Passage, SegmentationConfig, split_lines
from .similarity import NGramProfile, build_profile, similarity


@dataclass(frozen=True)
class PassageVersion:
    passage: Passage
    id: str
    snapshot_index: int


@dataclass(frozen=True)
class IdentityMatrix:
    snapshots: tuple[tuple[PassageVersion, ...], ...]
    granularity: Granularity
    threshold: float | None = None

    def ids_at(self, index: int) -> list[str]:
        return [pv.id for pv in self.snapshots[index]]


def assign_initial_ids(
    snapshot_passages: Sequence[Sequence[Passage]], granularity: Granularity
) -> IdentityMatrix:
    """Give every passage in every snapshot a fresh, globally unique ID."""
    counter = count()
    snapshots = tuple(
        tuple(
            PassageVersion(passage, str(next(counter)), snap_idx)
            for passage in passages
        )
        for snap_idx, passages in enumerate(snapshot_passages)
    )
    return IdentityMatrix(snapshots, granularity)


def _with_ids(m: IdentityMatrix, ids: list[list[str]], threshold: float | None) -> IdentityMatrix:
    snapshots = tuple(
        tuple(replace(pv, id=ids[i][j]) for j, pv in enumerate(snap))
        for i, snap in enumerate(m.snapshots)
    )
    return IdentityMatrix(snapshots, m.granularity, threshold)


def propagate_ids(
    m: IdentityMatrix,
    sim_cfg: SegmentationConfig,
    threshold: float,
    one_to_one: bool = True,
) -> IdentityMatrix:
    """Adopt IDs across adjacent snapshot pairs, latest pair first.

    ``one_to_one`` (default) sorts all cross-pairs by descending
    similarity (ties: smaller ordinal at t+1, then at t) and matches each
    passage at most once. The flagged variant instead lets every passage
    at t independently adopt its best match's ID, which can merge
    distinct passages onto one ID.
    """
    if not 0.0 <= threshold <= 1.0:
        raise ValueError(f"threshold must be in [0, 1], got {threshold}")
    profiles: list[list[NGramProfile | None]] = [
        [
            build_profile(pv.passage.text, sim_cfg.ngram_n) if pv.passage.text else None
            for pv in snap
        ]
        for snap in m.snapshots
    ]
    ids = [[pv.id for pv in snap] for snap in m.snapshots]
    for t in range(len(m.snapshots) - 2, -1, -1):
        scores = [
            (similarity(p, q), j, i)
            for i, p in enumerate(profiles[t])
            if p is not None
            for j, q in enumerate(profiles[t + 1])
            if q is not None
        ]
        if one_to_one:
            scores.sort(key=lambda s: (-s[0], s[1], s[2]))
            matched_t: set[int] = set()
            matched_next: set[int] = set()
            for score, j, i in scores:
                if score <= threshold:
                    break
                if i in matched_t or j in matched_next:
                    continue
                ids[t][i] = ids[t + 1][j]
                matched_t.add(i)
                matched_next.add(j)
        else:
            # Per-passage variant: first strict maximum wins, reuse allowed.
            best: dict[int, tuple[float, int]] = {}
            for score, j, i in scores:
                if i not in best or score > best[i][0]:
                    best[i] = (score, j)
            for i, (score, j) in best.items():
                if score > threshold:
                    ids[t][i] = ids[t + 1][j]
    return _with_ids(m, ids, threshold)


def line_identities_from_diffs(history: RevisionHistory) -> IdentityMatrix:
    """Connect code lines across snapshots via common diff segments.

    Lines inside a common segment at time t adopt the IDs of their
    aligned counterparts at t+1; removed lines keep their own IDs.
    Propagation runs backward from the latest pair.
    """
    if history.kind is not SessionKind.CODE:
        raise ValueError("line identity tracking applies to code sessions")
    line_lists = [split_lines(content) for content in history.contents()]
    m = assign_initial_ids(line_lists, Granularity.LINE)
    ids = [[pv.id for pv in snap] for snap in m.snapshots]
    for t in range(len(m.snapshots) - 2, -1, -1):
        a = [pv.passage.text for pv in m.snapshots[t]]
        b = [pv.passage.text for pv in m.snapshots[t + 1]]
        script = diff(a, b, DiffUnit.LINE)
        ai = bi = 0
        for seg in script.segments:
            if seg.label is SegmentLabel.COMMON:
                for k in range(len(seg.units)):
                    ids[t][ai + k] = ids[t + 1][bi + k]
                ai += len(seg.units)
                bi += len(seg.units)
            elif seg.label is SegmentLabel.REMOVED:
                ai += len(seg.units)
            else:
                bi += len(seg.units)
    return _with_ids(m, ids, None)


def passage_origin_times(m: IdentityMatrix) -> dict[str, int]:
    """First snapshot index at which each ID appears."""
    origins: dict[str, int] = {}
    for snap_idx, snap in enumerate(m.snapshots):
        for pv in snap:
            origins.setdefault(pv.id, snap_idx)
    return origins
