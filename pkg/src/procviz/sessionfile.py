"""Plaintext session file format.

One UTF-8 document: a version marker line, kind and capture-interval
header lines, then one record line per snapshot (``s``) and per execution
event (``x``). Content is JSON-escaped so each record stays on one line.
The writer is canonical: loading a saved file and saving it again
reproduces the bytes exactly. The encrypted container wraps exactly
these bytes.

    pfsession/1
    kind text
    interval 5000
    s 0 ""
    s 5000 "hello"
    x 2500 1 "exit ok"
"""

from __future__ import annotations

import json

from .model import (
    ExecutionEvent,
    RevisionHistory,
    SessionKind,
    Snapshot,
    validate_history,
)

FORMAT_MARKER = "pfsession/1"


class MalformedSessionError(ValueError):
    """The session file does not follow the pfsession/1 format."""


def header_lines(kind: SessionKind, capture_interval_ms: int) -> list[str]:
    return [FORMAT_MARKER, f"kind {kind.value}", f"interval {capture_interval_ms}"]


def snapshot_record(snap: Snapshot) -> str:
    return f"s {snap.t} {json.dumps(snap.content, ensure_ascii=False)}"


def execution_record(ev: ExecutionEvent) -> str:
    record = f"x {ev.t} {1 if ev.success else 0}"
    if ev.detail is not None:
        record += f" {json.dumps(ev.detail, ensure_ascii=False)}"
    return record


def dumps(h: RevisionHistory) -> str:
    lines = header_lines(h.kind, h.capture_interval_ms)
    lines.extend(snapshot_record(s) for s in h.snapshots)
    lines.extend(execution_record(e) for e in h.executions)
    return "\n".join(lines) + "\n"


def dump_bytes(h: RevisionHistory) -> bytes:
    return dumps(h).encode("utf-8")


def _parse_json_string(raw: str, lineno: int) -> str:
    try:
        value = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise MalformedSessionError(f"line {lineno}: bad string literal") from exc
    if not isinstance(value, str):
        raise MalformedSessionError(f"line {lineno}: expected a string literal")
    return value


def loads(text: str, validate: bool = True) -> RevisionHistory:
    """Parse a pfsession/1 document.

    With ``validate`` (the default) the result passes through
    ``validate_history`` (sorting, dedup, event-range checks); raw mode
    preserves records as stored, for byte-exact round-trips.
    """
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if len(lines) < 3:
        raise MalformedSessionError("truncated header")
    if lines[0] != FORMAT_MARKER:
        raise MalformedSessionError(f"bad format marker: {lines[0]!r}")
    kind_parts = lines[1].split(" ")
    if len(kind_parts) != 2 or kind_parts[0] != "kind":
        raise MalformedSessionError(f"bad kind line: {lines[1]!r}")
    try:
        kind = SessionKind(kind_parts[1])
    except ValueError as exc:
        raise MalformedSessionError(f"unknown kind: {kind_parts[1]!r}") from exc
    interval_parts = lines[2].split(" ")
    if (
        len(interval_parts) != 2
        or interval_parts[0] != "interval"
        or not interval_parts[1].isdigit()
    ):
        raise MalformedSessionError(f"bad interval line: {lines[2]!r}")
    interval = int(interval_parts[1])

    snapshots: list[Snapshot] = []
    executions: list[ExecutionEvent] = []
    for lineno, line in enumerate(lines[3:], start=4):
        fields = line.split(" ", 2)
        if fields[0] == "s":
            if len(fields) != 3 or not fields[1].lstrip("-").isdigit():
                raise MalformedSessionError(f"line {lineno}: bad snapshot record")
            snapshots.append(
                Snapshot(int(fields[1]), _parse_json_string(fields[2], lineno))
            )
        elif fields[0] == "x":
            if len(fields) < 3 or not fields[1].lstrip("-").isdigit():
                raise MalformedSessionError(f"line {lineno}: bad execution record")
            flag_and_detail = fields[2].split(" ", 1)
            if flag_and_detail[0] not in ("0", "1"):
                raise MalformedSessionError(f"line {lineno}: bad execution flag")
            detail = None
            if len(flag_and_detail) == 2:
                detail = _parse_json_string(flag_and_detail[1], lineno)
            executions.append(
                ExecutionEvent(int(fields[1]), flag_and_detail[0] == "1", detail)
            )
        else:
            raise MalformedSessionError(f"line {lineno}: unknown record {fields[0]!r}")

    if not validate:
        return RevisionHistory(kind, tuple(snapshots), tuple(executions), interval)
    return validate_history(kind, snapshots, executions, interval)


def load_bytes(data: bytes, validate: bool = True) -> RevisionHistory:
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise MalformedSessionError("session file is not valid UTF-8") from exc
    return loads(text, validate=validate)
