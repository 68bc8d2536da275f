"""Load and save session files, plaintext or encrypted.

Encrypted files are detected by the container magic, not the extension,
so a renamed file still decrypts.
"""

from __future__ import annotations

import os
from pathlib import Path

from . import securestore, sessionfile
from .model import RevisionHistory


class PasscodeRequiredError(ValueError):
    """An encrypted session was opened without a passcode."""


def is_encrypted(path: Path | str) -> bool:
    with open(path, "rb") as f:
        return securestore.is_container(f.read(4))


def load_session(
    path: Path | str, passcode: str | None = None, validate: bool = True
) -> RevisionHistory:
    data = Path(path).read_bytes()
    if securestore.is_container(data):
        container = securestore.parse_container(data)  # malformed beats passcode
        if passcode is None:
            raise PasscodeRequiredError(f"{path} is encrypted; passcode required")
        data = securestore.decrypt(container, passcode)
    return sessionfile.load_bytes(data, validate=validate)


def save_session(
    h: RevisionHistory, path: Path | str, passcode: str | None = None
) -> None:
    """Write atomically: the previous file survives a crash mid-write."""
    data = sessionfile.dump_bytes(h)
    if passcode is not None:
        data = securestore.encrypt_to_bytes(data, passcode)
    write_atomic(Path(path), data)


def write_atomic(path: Path, data: bytes) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_bytes(data)
    os.replace(tmp, path)
