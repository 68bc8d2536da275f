"""Command-line surface: capture, run, analyze, serve.

Exit codes: 0 success, 1 I/O error, 2 usage error, 3 decryption or
authentication failure, 4 malformed session. The PF_PASSCODE environment
variable is read only when --passcode-env is given; otherwise encrypted
sessions prompt.
"""

from __future__ import annotations

import argparse
import dataclasses
import getpass
import os
import subprocess
import sys
import time
from pathlib import Path

from . import securestore, sessionfile, store
from .analytics import (
    DEFAULT_THRESHOLD,
    DEFAULT_TOP_K_WORDS,
    DescriptiveStats,
    build_bundle,
)
from .capture import MIN_INTERVAL_MS, CaptureSession, run_capture_loop
from .model import (
    DEFAULT_CAPTURE_INTERVAL_MS,
    DEFAULT_IDLE_GAP_MS,
    EmptyHistoryError,
    DuplicateTimestampError,
    ExecutionEvent,
)
from .segmentation import SegmentationConfig
from .server import PortInUseError, create_server

EXIT_OK = 0
EXIT_IO = 1
EXIT_USAGE = 2
EXIT_AUTH = 3
EXIT_MALFORMED = 4

PASSCODE_ENV_VAR = "PF_PASSCODE"


def _unescape_delims(raw: str) -> frozenset[str]:
    """Parse a delimiter-set flag: literal characters, with \\t \\n \\r \\\\."""
    escapes = {"t": "\t", "n": "\n", "r": "\r", "\\": "\\", "s": " "}
    chars: set[str] = set()
    i = 0
    while i < len(raw):
        ch = raw[i]
        if ch == "\\" and i + 1 < len(raw) and raw[i + 1] in escapes:
            chars.add(escapes[raw[i + 1]])
            i += 2
        else:
            chars.add(ch)
            i += 1
    return frozenset(chars)


def _segmentation_config(args: argparse.Namespace) -> SegmentationConfig:
    kwargs: dict = {"ngram_n": args.ngram_n}
    if args.word_delims is not None:
        kwargs["word_delimiters"] = _unescape_delims(args.word_delims)
    if args.sentence_delims is not None:
        kwargs["sentence_delimiters"] = _unescape_delims(args.sentence_delims)
    return SegmentationConfig(**kwargs)


def _resolve_passcode(args: argparse.Namespace, prompt: str) -> str:
    if getattr(args, "passcode_env", False):
        passcode = os.environ.get(PASSCODE_ENV_VAR, "")
        if not passcode:
            raise UsageError(f"{PASSCODE_ENV_VAR} is empty or unset")
        return passcode
    passcode = getpass.getpass(prompt)
    if not passcode:
        raise UsageError("passcode must be non-empty")
    return passcode


def _load_session_checked(args: argparse.Namespace, path: str, validate: bool = True):
    try:
        return store.load_session(path, validate=validate), None
    except store.PasscodeRequiredError:
        passcode = _resolve_passcode(args, f"passcode for {path}: ")
        return store.load_session(path, passcode, validate=validate), passcode


class UsageError(ValueError):
    pass


def format_duration_ms(ms: int) -> str:
    seconds = ms // 1000
    h, rem = divmod(seconds, 3600)
    m, s = divmod(rem, 60)
    return f"{h}:{m:02d}:{s:02d}"


def format_stats_table(stats: DescriptiveStats) -> str:
    rows = [
        ("total characters", str(stats.total_characters)),
        ("total words", str(stats.total_words)),
        ("total sentences", str(stats.total_sentences)),
        ("total paragraphs", str(stats.total_paragraphs)),
        ("total lines", str(stats.total_lines)),
        ("elapsed time", format_duration_ms(stats.elapsed_ms)),
        ("active time", format_duration_ms(stats.active_ms)),
        ("average typing speed", f"{stats.avg_chars_per_minute:.1f} chars/min"),
    ]
    return "\n".join(f"{label:<22}{value}" for label, value in rows)


def cmd_capture(args: argparse.Namespace) -> int:
    passcode = None
    if args.encrypt:
        passcode = _resolve_passcode(args, "passcode for new session: ")
    session = CaptureSession(
        args.path,
        args.out,
        kind=args.kind,
        interval_ms=args.interval_ms,
        passcode=passcode,
    )
    print(
        f"capturing {args.path} every {args.interval_ms} ms -> {args.out} "
        "(Ctrl-C to stop)",
        file=sys.stderr,
    )
    run_capture_loop(session)
    return EXIT_OK


def cmd_run(args: argparse.Namespace) -> int:
    command = args.command
    if command and command[0] == "--":
        command = command[1:]
    if not command:
        raise UsageError("no command given to run")
    history, passcode = _load_session_checked(args, args.session, validate=False)
    t = int(time.time() * 1000)
    try:
        proc = subprocess.run(command, capture_output=True, text=True)
    except FileNotFoundError:
        print(f"command not found: {command[0]}", file=sys.stderr)
        return EXIT_IO
    sys.stdout.write(proc.stdout)
    sys.stderr.write(proc.stderr)
    detail = proc.stderr.splitlines()[0] if proc.stderr else None
    event = ExecutionEvent(t, proc.returncode == 0, detail)
    updated = dataclasses.replace(history, executions=history.executions + (event,))
    store.save_session(updated, args.session, passcode)
    print(
        f"recorded {'successful' if event.success else 'failed'} execution at t={t}",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_analyze(args: argparse.Namespace) -> int:
    if not 0.0 <= args.threshold <= 1.0:
        raise UsageError(f"--threshold must be in [0, 1], got {args.threshold}")
    if args.idle_gap_ms <= 0:
        raise UsageError("--idle-gap-ms must be > 0")
    if args.top_k < 1:
        raise UsageError("--top-k must be >= 1")
    try:
        cfg = _segmentation_config(args)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    history, _ = _load_session_checked(args, args.session)
    bundle = build_bundle(
        history,
        cfg,
        threshold=args.threshold,
        idle_gap_ms=args.idle_gap_ms,
        top_k=args.top_k,
        one_to_one=args.matching == "one-to-one",
    )
    out = args.out or str(
        Path(args.session).with_name(Path(args.session).stem + ".bundle.json")
    )
    Path(out).write_bytes(bundle.to_json_bytes())
    print(format_stats_table(bundle.stats))
    print(f"\nbundle written to {out}", file=sys.stderr)
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    bundle_bytes = Path(args.bundle).read_bytes()
    assets = Path(args.assets) if args.assets else None
    if assets is not None and not assets.is_dir():
        raise UsageError(f"assets directory not found: {assets}")
    httpd = create_server(bundle_bytes, args.port, assets)
    host, port = httpd.server_address[:2]
    print(f"serving bundle at http://{host}:{port}/ (Ctrl-C to stop)", file=sys.stderr)
    try:
        httpd.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        httpd.server_close()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="procviz",
        description="Capture and analyze the revision history of a writing or coding session.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_capture = sub.add_parser("capture", help="poll a file and record snapshots")
    p_capture.add_argument("path", help="file to watch")
    p_capture.add_argument("--out", required=True, help="session file to write")
    p_capture.add_argument(
        "--interval-ms",
        type=int,
        default=DEFAULT_CAPTURE_INTERVAL_MS,
        help=f"poll interval in ms (min {MIN_INTERVAL_MS})",
    )
    p_capture.add_argument("--kind", choices=["text", "code"], default="text")
    p_capture.add_argument(
        "--encrypt", action="store_true", help="write an encrypted .pfb container"
    )
    p_capture.add_argument(
        "--passcode-env",
        action="store_true",
        help=f"read the passcode from {PASSCODE_ENV_VAR} instead of prompting",
    )
    p_capture.set_defaults(func=cmd_capture)

    p_run = sub.add_parser("run", help="run a command and record the execution")
    p_run.add_argument("--session", required=True, help="session file to append to")
    p_run.add_argument("--passcode-env", action="store_true")
    p_run.add_argument("command", nargs=argparse.REMAINDER, help="command to execute")
    p_run.set_defaults(func=cmd_run)

    p_analyze = sub.add_parser("analyze", help="compute statistics and write a bundle")
    p_analyze.add_argument("session", help="session file (plaintext or .pfb)")
    p_analyze.add_argument("--out", help="bundle path (default: <session>.bundle.json)")
    p_analyze.add_argument("--ngram-n", type=int, default=5)
    p_analyze.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    p_analyze.add_argument("--idle-gap-ms", type=int, default=DEFAULT_IDLE_GAP_MS)
    p_analyze.add_argument("--top-k", type=int, default=DEFAULT_TOP_K_WORDS)
    p_analyze.add_argument("--word-delims", default=None, help="word delimiter characters")
    p_analyze.add_argument(
        "--sentence-delims", default=None, help="sentence delimiter characters"
    )
    p_analyze.add_argument(
        "--matching",
        choices=["one-to-one", "per-passage"],
        default="one-to-one",
        help="identity matching rule (per-passage allows many-to-one adoption)",
    )
    p_analyze.add_argument("--passcode-env", action="store_true")
    p_analyze.set_defaults(func=cmd_analyze)

    p_serve = sub.add_parser("serve", help="serve a bundle and the viewer locally")
    p_serve.add_argument("bundle", help="bundle file from analyze")
    p_serve.add_argument("--port", type=int, default=8787)
    p_serve.add_argument("--assets", help="directory of built viewer assets")
    p_serve.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))  # exits 2 with usage
        return EXIT_USAGE
    except securestore.EmptyPasscodeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except securestore.WrongPasscodeOrTampered as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_AUTH
    except (
        sessionfile.MalformedSessionError,
        securestore.MalformedContainerError,
        EmptyHistoryError,
        DuplicateTimestampError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except PortInUseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
