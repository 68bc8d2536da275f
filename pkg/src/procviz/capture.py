"""Poll a watched file and append timestamped snapshots as it changes.

The loop persists incrementally: a crash loses at most the last interval.
Plaintext sessions append one record per change to an open file;
encrypted sessions rewrite the whole container atomically per change.
The clock is injectable so tests can script an entire editing session
deterministically.
"""

from __future__ import annotations

import time
from pathlib import Path
from typing import Callable, TextIO

from . import securestore, sessionfile, store
from .model import (
    DEFAULT_CAPTURE_INTERVAL_MS,
    ExecutionEvent,
    RevisionHistory,
    SessionKind,
    Snapshot,
)

MIN_INTERVAL_MS = 500


def _wall_clock_ms() -> int:
    return int(time.time() * 1000)


class CaptureSession:
    """Incrementally persisted snapshot capture of one watched file."""

    def __init__(
        self,
        watch_path: Path | str,
        out_path: Path | str,
        *,
        kind: SessionKind | str = SessionKind.TEXT,
        interval_ms: int = DEFAULT_CAPTURE_INTERVAL_MS,
        passcode: str | None = None,
        now_ms: Callable[[], int] = _wall_clock_ms,
    ):
        if interval_ms < MIN_INTERVAL_MS:
            raise ValueError(f"interval_ms must be >= {MIN_INTERVAL_MS}")
        if passcode == "":
            raise securestore.EmptyPasscodeError("passcode must be non-empty")
        self.watch_path = Path(watch_path)
        self.out_path = Path(out_path)
        self.kind = SessionKind(kind)
        self.interval_ms = interval_ms
        self._passcode = passcode
        self._now_ms = now_ms
        if not self.watch_path.exists():
            raise FileNotFoundError(f"watched file not found: {self.watch_path}")
        self._snapshots: list[Snapshot] = []
        self._executions: list[ExecutionEvent] = []
        self._plain_out: TextIO | None = None
        if passcode is None:
            self._plain_out = open(self.out_path, "w", encoding="utf-8", newline="")
            for line in sessionfile.header_lines(self.kind, interval_ms):
                self._plain_out.write(line + "\n")
            self._plain_out.flush()

    @property
    def history(self) -> RevisionHistory:
        return RevisionHistory(
            self.kind,
            tuple(self._snapshots),
            tuple(self._executions),
            self.interval_ms,
        )

    def poll(self) -> bool:
        """Snapshot the watched file if its content changed.

        Transient read failures (file replaced mid-save, undecodable
        bytes) skip the poll rather than aborting the session.
        """
        try:
            content = self.watch_path.read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError):
            return False
        if self._snapshots and content == self._snapshots[-1].content:
            return False
        t = self._now_ms()
        if self._snapshots and t <= self._snapshots[-1].t:
            t = self._snapshots[-1].t + 1  # clock must stay strictly increasing
        snap = Snapshot(t, content)
        self._snapshots.append(snap)
        self._flush(snap)
        return True

    def _flush(self, snap: Snapshot) -> None:
        if self._plain_out is not None:
            self._plain_out.write(sessionfile.snapshot_record(snap) + "\n")
            self._plain_out.flush()
        else:
            assert self._passcode is not None
            data = securestore.encrypt_to_bytes(
                sessionfile.dump_bytes(self.history), self._passcode
            )
            store.write_atomic(self.out_path, data)

    def close(self) -> None:
        if self._plain_out is not None:
            self._plain_out.close()
            self._plain_out = None

    def __enter__(self) -> "CaptureSession":
        return self

    def __exit__(self, *exc_info: object) -> None:
        self.close()


def run_capture_loop(
    session: CaptureSession,
    sleep: Callable[[float], None] = time.sleep,
) -> None:
    """Poll forever at the capture interval; KeyboardInterrupt finalizes."""
    try:
        while True:
            session.poll()
            sleep(session.interval_ms / 1000.0)
    except KeyboardInterrupt:
        pass
    finally:
        session.close()
