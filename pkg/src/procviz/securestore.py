"""Passcode-protected at-rest container for session files.

Layout (big-endian, fixed offsets):

    magic           4 bytes  b"PFB1"
    kdf_salt       16 bytes  random per encryption
    kdf_iterations  4 bytes  unsigned int
    nonce          12 bytes  random per encryption
    ciphertext+tag  rest     AES-256-GCM over the session bytes

The key is derived with PBKDF2-HMAC-SHA256. KDF parameters live in the
header, so files written under older defaults stay readable. A wrong
passcode and a tampered file are indistinguishable by design: both
surface as an authentication failure.
"""

from __future__ import annotations

import os
import struct
from dataclasses import dataclass

from cryptography.exceptions import InvalidTag
from cryptography.hazmat.primitives import hashes
from cryptography.hazmat.primitives.ciphers.aead import AESGCM
from cryptography.hazmat.primitives.kdf.pbkdf2 import PBKDF2HMAC

MAGIC = b"PFB1"
SALT_LEN = 16
NONCE_LEN = 12
KEY_LEN = 32
GCM_TAG_LEN = 16
DEFAULT_KDF_ITERATIONS = 310000
_HEADER = struct.Struct(f">4s{SALT_LEN}sI{NONCE_LEN}s")

FILE_EXTENSION = ".pfb"


class EmptyPasscodeError(ValueError):
    """Encryption requires a non-empty passcode."""


class WrongPasscodeOrTampered(ValueError):
    """Authentication failed: bad passcode or modified container."""


class MalformedContainerError(ValueError):
    """The bytes do not form a valid container (magic/length checks)."""


@dataclass(frozen=True)
class EncryptedContainer:
    kdf_salt: bytes
    kdf_iterations: int
    nonce: bytes
    ciphertext: bytes

    def to_bytes(self) -> bytes:
        header = _HEADER.pack(MAGIC, self.kdf_salt, self.kdf_iterations, self.nonce)
        return header + self.ciphertext


def is_container(data: bytes) -> bool:
    return data[:4] == MAGIC


def parse_container(data: bytes) -> EncryptedContainer:
    if len(data) < _HEADER.size + GCM_TAG_LEN:
        raise MalformedContainerError(
            f"container truncated: {len(data)} bytes, need >= {_HEADER.size + GCM_TAG_LEN}"
        )
    magic, salt, iterations, nonce = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise MalformedContainerError(f"bad magic: {magic!r}")
    return EncryptedContainer(salt, iterations, nonce, data[_HEADER.size :])


def _derive_key(passcode: str, salt: bytes, iterations: int) -> bytes:
    kdf = PBKDF2HMAC(
        algorithm=hashes.SHA256(),
        length=KEY_LEN,
        salt=salt,
        iterations=iterations,
    )
    return kdf.derive(passcode.encode("utf-8"))


def encrypt(
    session_bytes: bytes,
    passcode: str,
    kdf_iterations: int = DEFAULT_KDF_ITERATIONS,
) -> EncryptedContainer:
    """AES-256-GCM encrypt with a fresh random salt and nonce."""
    if not passcode:
        raise EmptyPasscodeError("passcode must be non-empty")
    salt = os.urandom(SALT_LEN)
    nonce = os.urandom(NONCE_LEN)
    key = _derive_key(passcode, salt, kdf_iterations)
    ciphertext = AESGCM(key).encrypt(nonce, session_bytes, None)
    return EncryptedContainer(salt, kdf_iterations, nonce, ciphertext)


def decrypt(container: EncryptedContainer, passcode: str) -> bytes:
    key = _derive_key(passcode, container.kdf_salt, container.kdf_iterations)
    try:
        return AESGCM(key).decrypt(container.nonce, container.ciphertext, None)
    except InvalidTag as exc:
        raise WrongPasscodeOrTampered(
            "decryption failed: wrong passcode or tampered container"
        ) from exc


def encrypt_to_bytes(
    session_bytes: bytes,
    passcode: str,
    kdf_iterations: int = DEFAULT_KDF_ITERATIONS,
) -> bytes:
    return encrypt(session_bytes, passcode, kdf_iterations).to_bytes()


def decrypt_from_bytes(data: bytes, passcode: str) -> bytes:
    return decrypt(parse_container(data), passcode)
