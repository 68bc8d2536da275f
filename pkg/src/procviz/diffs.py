"""Minimal edit scripts between two versions, at line or character level.

Myers' greedy O(ND) algorithm solves the LCS/SES problem as a shortest
path over edit-graph diagonals. The output is a maximal-segment script
labeled common/added/removed such that:

    common + removed units, in order, reconstruct version A
    common + added units, in order, reconstruct version B
    |added| + |removed| = |a| + |b| - 2 * LCS(a, b)
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence


class SegmentLabel(str, Enum):
    COMMON = "common"
    ADDED = "added"
    REMOVED = "removed"


class DiffUnit(str, Enum):
    LINE = "line"
    CHARACTER = "character"
    WORD = "word"  # internal: used for the removed-words export only


@dataclass(frozen=True)
class DiffSegment:
    label: SegmentLabel
    units: tuple[str, ...]


@dataclass(frozen=True)
class DiffScript:
    segments: tuple[DiffSegment, ...]
    unit: DiffUnit

    def units_for(self, *labels: SegmentLabel) -> list[str]:
        return [u for seg in self.segments if seg.label in labels for u in seg.units]

    def reconstruct_a(self) -> list[str]:
        return self.units_for(SegmentLabel.COMMON, SegmentLabel.REMOVED)

    def reconstruct_b(self) -> list[str]:
        return self.units_for(SegmentLabel.COMMON, SegmentLabel.ADDED)

    def edit_length(self) -> int:
        return sum(
            len(seg.units)
            for seg in self.segments
            if seg.label is not SegmentLabel.COMMON
        )


def _shortest_edit_trace(a: Sequence[str], b: Sequence[str]) -> list[dict[int, int]]:
    """Forward Myers search; returns the per-d frontier for backtracking."""
    n, m = len(a), len(b)
    v: dict[int, int] = {1: 0}
    trace: list[dict[int, int]] = []
    for d in range(n + m + 1):
        trace.append(dict(v))
        for k in range(-d, d + 1, 2):
            if k == -d or (k != d and v.get(k - 1, 0) < v.get(k + 1, 0)):
                x = v.get(k + 1, 0)  # move down: insertion from b
            else:
                x = v.get(k - 1, 0) + 1  # move right: deletion from a
            y = x - k
            # Greedy snake: consume the common diagonal first.
            while x < n and y < m and a[x] == b[y]:
                x += 1
                y += 1
            v[k] = x
            if x >= n and y >= m:
                return trace
    raise AssertionError("unreachable: search exhausts at d = n + m")


def _backtrack(
    a: Sequence[str], b: Sequence[str], trace: list[dict[int, int]]
) -> list[tuple[SegmentLabel, str]]:
    """Walk the trace from (n, m) back to (0, 0), emitting labeled units."""
    ops: list[tuple[SegmentLabel, str]] = []
    x, y = len(a), len(b)
    for d in range(len(trace) - 1, -1, -1):
        v = trace[d]
        k = x - y
        if k == -d or (k != d and v.get(k - 1, 0) < v.get(k + 1, 0)):
            prev_k = k + 1
        else:
            prev_k = k - 1
        prev_x = v.get(prev_k, 0)
        prev_y = prev_x - prev_k
        while x > prev_x and y > prev_y:
            ops.append((SegmentLabel.COMMON, a[x - 1]))
            x -= 1
            y -= 1
        if d > 0:
            if x == prev_x:
                ops.append((SegmentLabel.ADDED, b[prev_y]))
            else:
                ops.append((SegmentLabel.REMOVED, a[prev_x]))
            x, y = prev_x, prev_y
    ops.reverse()
    return ops


def _merge_ops(
    ops: list[tuple[SegmentLabel, str]], unit: DiffUnit
) -> DiffScript:
    """Coalesce unit ops into maximal segments, removed-before-added."""
    segments: list[DiffSegment] = []
    i = 0
    while i < len(ops):
        label = ops[i][0]
        j = i
        while j < len(ops) and ops[j][0] is label:
            j += 1
        if label is SegmentLabel.ADDED:
            # Canonical order at a change point: removed first, then added.
            k = j
            while k < len(ops) and ops[k][0] is SegmentLabel.REMOVED:
                k += 1
            if k > j:
                segments.append(
                    DiffSegment(SegmentLabel.REMOVED, tuple(op[1] for op in ops[j:k]))
                )
                segments.append(
                    DiffSegment(SegmentLabel.ADDED, tuple(op[1] for op in ops[i:j]))
                )
                i = k
                continue
        segments.append(DiffSegment(label, tuple(op[1] for op in ops[i:j])))
        i = j
    merged: list[DiffSegment] = []
    for seg in segments:
        if merged and merged[-1].label is seg.label:
            merged[-1] = DiffSegment(seg.label, merged[-1].units + seg.units)
        else:
            merged.append(seg)
    return DiffScript(tuple(merged), unit)


def diff(a: Sequence[str], b: Sequence[str], unit: DiffUnit) -> DiffScript:
    """Minimal common/added/removed script between unit sequences a and b."""
    a = list(a)
    b = list(b)
    if a == b:
        if not a:
            return DiffScript((), unit)
        return DiffScript((DiffSegment(SegmentLabel.COMMON, tuple(a)),), unit)
    trace = _shortest_edit_trace(a, b)
    return _merge_ops(_backtrack(a, b, trace), unit)


def diff_texts(a: str, b: str, unit: DiffUnit) -> DiffScript:
    """Diff two documents split per ``unit`` (lines keep blank entries)."""
    if unit is DiffUnit.LINE:
        return diff(a.split("\n"), b.split("\n"), unit)
    return diff(list(a), list(b), unit)


def added_removed_counts(a: str, b: str) -> tuple[int, int]:
    """Characters added and removed between two document versions."""
    script = diff_texts(a, b, DiffUnit.CHARACTER)
    added = sum(
        len(seg.units) for seg in script.segments if seg.label is SegmentLabel.ADDED
    )
    removed = sum(
        len(seg.units) for seg in script.segments if seg.label is SegmentLabel.REMOVED
    )
    return added, removed


def playback_frame(prev: str, curr: str) -> list[tuple[str, str]]:
    """Merged rendering of one revision step as (label, text) spans.

    Dropping removed spans yields ``curr``; dropping added spans yields
    ``prev``. Spans appear in document order.
    """
    script = diff_texts(prev, curr, DiffUnit.CHARACTER)
    return [(seg.label.value, "".join(seg.units)) for seg in script.segments]
