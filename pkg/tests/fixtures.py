"""Shared session fixtures: a scripted text session and a code session.

TEXT_SCRIPT is written as a capture script: (poll time ms, file content)
pairs on the 5-second poll grid, including an idle break longer than the
60-second default. Tests replay it through the capture loop or build the
history directly; both must land on the same snapshots.
"""

from __future__ import annotations

from procviz.capture import CaptureSession
from procviz.model import ExecutionEvent, validate_history

TEXT_SCRIPT = [
    (0, ""),
    (5000, "Writing is rewriting."),
    (10000, "Writing is rewriting.\n\nFirst drafts are rough."),
    (
        15000,
        "Writing is rewriting.\n\nFirst drafts are rough. Revision makes them shine.",
    ),
    (
        # 65 s pause: an idle gap under the default 60 s threshold rule.
        80000,
        "Writing is thinking on paper.\n\nFirst drafts are rough. Revision makes them shine.",
    ),
    (
        85000,
        "Writing is thinking on paper.\n\nFirst drafts are rough. Revision makes them shine.\n\nNotes matter. Notes matter.",
    ),
    (
        90000,
        "Writing is thinking on paper.\n\nDrafts are rough.\n\nNotes matter. Notes matter.",
    ),
    (
        95000,
        "Writing is thinking on paper.\n\nDrafts are rough.\n\nNotes matter. Notes matter. Writing the notes helps the writer.",
    ),
    (
        100000,
        "Writing is thinking on paper.\n\nDrafts are rough indeed.\n\nNotes matter. Notes matter. Writing the notes helps the writer.",
    ),
    (
        105000,
        "Writing is thinking on paper.\n\nDrafts are rough indeed.\n\nNotes matter. Notes matter. Writing the notes helps the writer. The end.",
    ),
]

CODE_SCRIPT = [
    (0, "def main():\n    pass\n"),
    (5000, 'def main():\n    print("hello")\n'),
    (10000, 'def greet(name):\n    print("hello", name)\n\n\ndef main():\n    greet("world")\n'),
    (15000, 'def greet(name):\n    print("Hello,", name)\n\n\ndef main():\n    greet("world")\n'),
]

CODE_EXECUTIONS = [
    ExecutionEvent(7000, False, "NameError: name 'pront' is not defined"),
    ExecutionEvent(12000, True, None),
]


def text_history():
    return validate_history("text", TEXT_SCRIPT)


def code_history():
    return validate_history("code", CODE_SCRIPT, CODE_EXECUTIONS)


def replay_capture(tmp_path, out_name, passcode=None):
    """Drive the capture loop through TEXT_SCRIPT with an injected clock."""
    watched = tmp_path / "doc.txt"
    changes = dict(TEXT_SCRIPT)
    watched.write_text(changes[0], encoding="utf-8")
    now = {"t": 0}
    session = CaptureSession(
        watched,
        tmp_path / out_name,
        interval_ms=5000,
        passcode=passcode,
        now_ms=lambda: now["t"],
    )
    with session:
        for t in range(0, TEXT_SCRIPT[-1][0] + 1, 5000):
            now["t"] = t
            if t in changes:
                watched.write_text(changes[t], encoding="utf-8")
            session.poll()
    return tmp_path / out_name
