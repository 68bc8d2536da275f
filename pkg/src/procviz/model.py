"""Session data model: timestamped snapshots, execution events, idle gaps.

A session is an ordered list of full-content snapshots of one document,
optionally interleaved with code-execution events. All types here are
plain values; every operation is a deterministic function of its inputs.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Iterable


DEFAULT_CAPTURE_INTERVAL_MS = 5000
DEFAULT_IDLE_GAP_MS = 60000


class SessionKind(str, Enum):
    TEXT = "text"
    CODE = "code"


class EmptyHistoryError(ValueError):
    """A history with no snapshots cannot be analyzed."""


class DuplicateTimestampError(ValueError):
    """Two snapshots share a timestamp; ordering would be ambiguous."""


@dataclass(frozen=True)
class Snapshot:
    """Full document content at one moment (epoch milliseconds)."""

    t: int
    content: str


@dataclass(frozen=True)
class ExecutionEvent:
    t: int
    success: bool
    detail: str | None = None


@dataclass(frozen=True)
class RevisionHistory:
    kind: SessionKind
    snapshots: tuple[Snapshot, ...]
    executions: tuple[ExecutionEvent, ...] = ()
    capture_interval_ms: int = DEFAULT_CAPTURE_INTERVAL_MS

    @property
    def elapsed_ms(self) -> int:
        return self.snapshots[-1].t - self.snapshots[0].t

    def contents(self) -> list[str]:
        return [s.content for s in self.snapshots]


@dataclass(frozen=True)
class TimelineSegmentation:
    """Active spans of a session: inter-snapshot gaps within the idle bound."""

    active_spans: tuple[tuple[int, int], ...]
    idle_gap_threshold_ms: int

    @property
    def total_active_ms(self) -> int:
        return sum(end - start for start, end in self.active_spans)

    def is_idle_gap(self, gap_ms: int) -> bool:
        return gap_ms > self.idle_gap_threshold_ms


def validate_history(
    kind: SessionKind | str,
    snapshots: Iterable[Snapshot | tuple[int, str]],
    executions: Iterable[ExecutionEvent] = (),
    capture_interval_ms: int = DEFAULT_CAPTURE_INTERVAL_MS,
) -> RevisionHistory:
    """Normalize raw session data into a valid RevisionHistory.

    Snapshots are sorted by timestamp; runs of consecutive identical
    content collapse to their earliest snapshot. Execution events outside
    the snapshot time range are dropped with a warning.

    Raises EmptyHistoryError for no snapshots and DuplicateTimestampError
    when two snapshots share a timestamp.
    """
    kind = SessionKind(kind)
    snaps = [s if isinstance(s, Snapshot) else Snapshot(*s) for s in snapshots]
    if not snaps:
        raise EmptyHistoryError("history has no snapshots")
    snaps.sort(key=lambda s: s.t)
    for prev, curr in zip(snaps, snaps[1:]):
        if prev.t == curr.t:
            raise DuplicateTimestampError(f"duplicate snapshot timestamp {curr.t}")
    deduped = [snaps[0]]
    for snap in snaps[1:]:
        if snap.content != deduped[-1].content:
            deduped.append(snap)

    first_t, last_t = deduped[0].t, deduped[-1].t
    kept_events = []
    for ev in sorted(executions, key=lambda e: e.t):
        if first_t <= ev.t <= last_t:
            kept_events.append(ev)
        else:
            warnings.warn(
                f"dropping execution event at t={ev.t}: outside snapshot "
                f"range [{first_t}, {last_t}]",
                stacklevel=2,
            )
    return RevisionHistory(
        kind=kind,
        snapshots=tuple(deduped),
        executions=tuple(kept_events),
        capture_interval_ms=capture_interval_ms,
    )


def segment_timeline(
    h: RevisionHistory, idle_gap_threshold_ms: int = DEFAULT_IDLE_GAP_MS
) -> TimelineSegmentation:
    """Active spans: maximal unions of inter-snapshot gaps <= the threshold.

    Gaps strictly greater than the threshold are idle and excluded; a
    single-snapshot history has zero active time.
    """
    if idle_gap_threshold_ms <= 0:
        raise ValueError("idle_gap_threshold_ms must be > 0")
    spans: list[tuple[int, int]] = []
    for prev, curr in zip(h.snapshots, h.snapshots[1:]):
        if curr.t - prev.t > idle_gap_threshold_ms:
            continue
        if spans and spans[-1][1] == prev.t:
            spans[-1] = (spans[-1][0], curr.t)
        else:
            spans.append((prev.t, curr.t))
    return TimelineSegmentation(tuple(spans), idle_gap_threshold_ms)
