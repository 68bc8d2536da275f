import random

import pytest

from procviz.securestore import (
    DEFAULT_KDF_ITERATIONS,
    MAGIC,
    EmptyPasscodeError,
    MalformedContainerError,
    WrongPasscodeOrTampered,
    decrypt,
    decrypt_from_bytes,
    encrypt,
    encrypt_to_bytes,
    parse_container,
)

# Small iteration count keeps the KDF fast in tests; the container stores
# whatever was used, so decryption never needs to know the default.
FAST_ITERS = 1000


class TestRoundTrip:
    def test_round_trip(self):
        data = b"pfsession/1\nkind text\ninterval 5000\ns 0 \"hi\"\n"
        blob = encrypt_to_bytes(data, "sekrit", FAST_ITERS)
        assert decrypt_from_bytes(blob, "sekrit") == data

    def test_empty_payload(self):
        blob = encrypt_to_bytes(b"", "p", FAST_ITERS)
        assert decrypt_from_bytes(blob, "p") == b""

    def test_unicode_passcode(self):
        blob = encrypt_to_bytes(b"data", "pässçode—", FAST_ITERS)
        assert decrypt_from_bytes(blob, "pässçode—") == b"data"

    def test_random_payloads(self):
        rng = random.Random(11)
        for _ in range(20):
            payload = rng.randbytes(rng.randint(0, 4096))
            blob = encrypt_to_bytes(payload, "pw", FAST_ITERS)
            assert decrypt_from_bytes(blob, "pw") == payload

    def test_fresh_salt_and_nonce_each_time(self):
        a = encrypt(b"same bytes", "pw", FAST_ITERS)
        b = encrypt(b"same bytes", "pw", FAST_ITERS)
        assert a.kdf_salt != b.kdf_salt
        assert a.nonce != b.nonce
        assert a.ciphertext != b.ciphertext


class TestLayout:
    def test_header_fields(self):
        blob = encrypt_to_bytes(b"xyz", "pw", FAST_ITERS)
        assert blob[:4] == MAGIC == b"PFB1"
        container = parse_container(blob)
        assert len(container.kdf_salt) == 16
        assert len(container.nonce) == 12
        assert container.kdf_iterations == FAST_ITERS
        assert int.from_bytes(blob[20:24], "big") == FAST_ITERS

    def test_iterations_read_from_header_not_default(self):
        # A file written under an older default must stay readable.
        blob = encrypt_to_bytes(b"old file", "pw", 777)
        assert parse_container(blob).kdf_iterations == 777
        assert decrypt_from_bytes(blob, "pw") == b"old file"

    def test_default_iteration_count(self):
        assert DEFAULT_KDF_ITERATIONS == 310000


class TestRejection:
    def test_empty_passcode(self):
        with pytest.raises(EmptyPasscodeError):
            encrypt(b"data", "")

    def test_wrong_passcode(self):
        blob = encrypt_to_bytes(b"data", "right", FAST_ITERS)
        with pytest.raises(WrongPasscodeOrTampered):
            decrypt_from_bytes(blob, "wrong")

    def test_flipped_ciphertext_byte(self):
        blob = bytearray(encrypt_to_bytes(b"data", "pw", FAST_ITERS))
        blob[-1] ^= 0x01
        with pytest.raises(WrongPasscodeOrTampered):
            decrypt_from_bytes(bytes(blob), "pw")

    def test_any_single_byte_flip_rejected(self):
        # Positions 20..22 (high bytes of the iteration count) are
        # covered separately below: flipping them up is rejected too, but
        # only after billions of PBKDF2 rounds.
        payload = b"x" * 100
        blob = encrypt_to_bytes(payload, "pw", FAST_ITERS)
        rng = random.Random(5)
        positions = [p for p in range(len(blob)) if p not in (20, 21, 22)]
        for _ in range(40):
            corrupted = bytearray(blob)
            pos = rng.choice(positions)
            corrupted[pos] ^= 1 << rng.randrange(8)
            if corrupted[:4] != MAGIC:
                with pytest.raises(MalformedContainerError):
                    decrypt_from_bytes(bytes(corrupted), "pw")
            else:
                with pytest.raises(WrongPasscodeOrTampered):
                    decrypt_from_bytes(bytes(corrupted), "pw")

    def test_tampered_iteration_count_rejected(self):
        blob = bytearray(encrypt_to_bytes(b"data", "pw", FAST_ITERS))
        blob[20:24] = (FAST_ITERS - 1).to_bytes(4, "big")
        with pytest.raises(WrongPasscodeOrTampered):
            decrypt_from_bytes(bytes(blob), "pw")

    def test_truncated_file(self):
        blob = encrypt_to_bytes(b"data", "pw", FAST_ITERS)
        with pytest.raises(MalformedContainerError):
            parse_container(blob[:20])

    def test_bad_magic(self):
        blob = bytearray(encrypt_to_bytes(b"data", "pw", FAST_ITERS))
        blob[0:4] = b"NOPE"
        with pytest.raises(MalformedContainerError):
            parse_container(bytes(blob))
