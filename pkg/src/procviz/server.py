"""Loopback HTTP service: viewer assets, the bundle, on-demand diffs.

The loaded bundle is immutable and shared read-only across request
threads. Diffs between arbitrary snapshot pairs are computed on demand
from the snapshot contents embedded in the bundle.
"""

from __future__ import annotations

import errno
import json
import mimetypes
from functools import partial
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

from .analytics import IndexOutOfRangeError, PVBundle, any_to_any_diff, bundle_from_json
from .model import RevisionHistory, SessionKind, Snapshot

FALLBACK_INDEX = b"""<!doctype html>
<html><head><meta charset="utf-8"><title>procviz</title></head>
<body>
<h1>procviz bundle server</h1>
<p>No viewer assets were supplied (run <code>procviz serve --assets DIR</code>
with the built viewer). The raw bundle is at <a href="/bundle">/bundle</a>.</p>
</body></html>
"""


class PortInUseError(OSError):
    """The requested port is already bound."""


def history_from_bundle(bundle: PVBundle) -> RevisionHistory:
    return RevisionHistory(
        kind=SessionKind(bundle.kind),
        snapshots=tuple(Snapshot(s["t"], s["content"]) for s in bundle.snapshots),
        capture_interval_ms=bundle.config["capture_interval_ms"],
    )


class BundleRequestHandler(BaseHTTPRequestHandler):
    server_version = "procviz"

    def __init__(
        self,
        *args,
        bundle_bytes: bytes,
        history: RevisionHistory,
        assets_dir: Path | None,
        **kwargs,
    ):
        self._bundle_bytes = bundle_bytes
        self._history = history
        self._assets_dir = assets_dir
        super().__init__(*args, **kwargs)

    def log_message(self, format: str, *args) -> None:  # quiet by default
        pass

    def do_GET(self) -> None:
        url = urlparse(self.path)
        if url.path == "/bundle":
            self._send(200, "application/json", self._bundle_bytes)
        elif url.path == "/diff":
            self._handle_diff(url.query)
        else:
            self._serve_asset(url.path)

    def _handle_diff(self, query: str) -> None:
        params = parse_qs(query)
        try:
            i = int(params["i"][0])
            j = int(params["j"][0])
        except (KeyError, ValueError):
            self._send_json(400, {"error": "query parameters i and j must be integers"})
            return
        try:
            script, chars_added, chars_removed = any_to_any_diff(self._history, i, j)
        except IndexOutOfRangeError as exc:
            self._send_json(400, {"error": "IndexOutOfRange", "detail": str(exc)})
            return
        self._send_json(
            200,
            {
                "i": i,
                "j": j,
                "unit": script.unit.value,
                "segments": [
                    [seg.label.value, list(seg.units)] for seg in script.segments
                ],
                "chars_added": chars_added,
                "chars_removed": chars_removed,
            },
        )

    def _serve_asset(self, path: str) -> None:
        if path == "/":
            path = "/index.html"
        if self._assets_dir is None:
            if path == "/index.html":
                self._send(200, "text/html; charset=utf-8", FALLBACK_INDEX)
            else:
                self._send_json(404, {"error": f"not found: {path}"})
            return
        target = (self._assets_dir / path.lstrip("/")).resolve()
        if not str(target).startswith(str(self._assets_dir.resolve())) or not target.is_file():
            self._send_json(404, {"error": f"not found: {path}"})
            return
        ctype = mimetypes.guess_type(target.name)[0] or "application/octet-stream"
        self._send(200, ctype, target.read_bytes())

    def _send(self, status: int, content_type: str, body: bytes) -> None:
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _send_json(self, status: int, payload: dict) -> None:
        self._send(
            status,
            "application/json",
            json.dumps(payload, ensure_ascii=False).encode("utf-8"),
        )


def create_server(
    bundle_bytes: bytes,
    port: int,
    assets_dir: Path | None = None,
    host: str = "127.0.0.1",
) -> ThreadingHTTPServer:
    """Bind the bundle server on a loopback address (port 0 picks one)."""
    bundle = bundle_from_json(bundle_bytes.decode("utf-8"))
    handler = partial(
        BundleRequestHandler,
        bundle_bytes=bundle_bytes,
        history=history_from_bundle(bundle),
        assets_dir=assets_dir,
    )
    try:
        return ThreadingHTTPServer((host, port), handler)
    except OSError as exc:
        if exc.errno == errno.EADDRINUSE:
            raise PortInUseError(f"port {port} is already in use") from exc
        raise
