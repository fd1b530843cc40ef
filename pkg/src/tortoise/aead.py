"""Authenticated encryption with associated data, in two modes.

Nonce-respecting mode encrypts each padded plaintext block under a
counter tweak and derives the tag from the XOR checksum of the plaintext
blocks plus an associated-data accumulator.  It is fast and parallel but
the caller must never reuse a (key, nonce) pair.

Misuse-resistant mode first derives the tag from the whole message (so it
depends on every plaintext and associated-data bit), then uses the tag to
seed a keystream.  Sealing is fully deterministic; repeating a nonce only
reveals whether two messages were identical.

Both modes PKCS#7-pad the plaintext and the associated data, carry a
full-block tag, and verify it in constant time before releasing anything.
"""

from __future__ import annotations

import enum
import hmac
from dataclasses import dataclass

from .tweakable import (
    TweakableKey,
    encode_ad_tweak,
    encode_mr_stream_tweak,
    encode_mr_tag_tweak,
    encode_nr_msg_tweak,
    mr_nonce_len,
    nr_nonce_len,
    tweak_decrypt,
    tweak_encrypt,
    xor_bytes,
)

__all__ = [
    "AeadMode",
    "AuthenticationError",
    "SealedMessage",
    "nonce_length",
    "pkcs7_pad",
    "pkcs7_unpad",
    "compute_auth",
    "seal_nr",
    "open_nr",
    "seal_mr",
    "open_mr",
]


class AuthenticationError(Exception):
    """Tag verification failed; nothing about the message is released."""


class AeadMode(enum.Enum):
    NONCE_RESPECTING = "nr"
    MISUSE_RESISTANT = "mr"


def nonce_length(mode: AeadMode, block_len: int = 16) -> int:
    """Required nonce width for ``mode`` with the given block size."""
    if mode is AeadMode.NONCE_RESPECTING:
        return nr_nonce_len(block_len)
    return mr_nonce_len(block_len)


@dataclass(frozen=True)
class SealedMessage:
    """Output of seal: padded ciphertext, full-block tag, nonce, mode."""

    ciphertext: bytes
    tag: bytes
    nonce: bytes
    mode: AeadMode


def pkcs7_pad(data: bytes, n: int) -> bytes:
    """Append k bytes of value k so the length is a multiple of ``n``.

    Always appends: already-aligned input gains a full block of padding.
    """
    if not 1 <= n <= 255:
        raise ValueError(f"block size must be in [1, 255], got {n}")
    k = n - len(data) % n
    return data + bytes([k]) * k


def pkcs7_unpad(data: bytes, n: int) -> bytes:
    """Strip and validate padding; exact inverse of :func:`pkcs7_pad`."""
    if not 1 <= n <= 255:
        raise ValueError(f"block size must be in [1, 255], got {n}")
    if not data or len(data) % n:
        raise ValueError("padded data must be a positive multiple of the block size")
    k = data[-1]
    if not 1 <= k <= n or data[-k:] != bytes([k]) * k:
        raise ValueError("bad padding")
    return data[:-k]


def _blocks(data: bytes, n: int) -> list[bytes]:
    return [data[i : i + n] for i in range(0, len(data), n)]


def compute_auth(key: TweakableKey, ad: bytes) -> bytes:
    """XOR-accumulate the padded associated-data blocks under AD tweaks.

    Empty associated data still contributes one block of padding, so
    (ad="", pt=x) and (ad=x, pt="") never authenticate the same way.
    """
    n = key.cipher.block_len
    auth = bytes(n)
    for i, block in enumerate(_blocks(pkcs7_pad(ad, n), n)):
        auth = xor_bytes(auth, tweak_encrypt(key, encode_ad_tweak(i, n), block))
    return auth


def seal_nr(key: TweakableKey, nonce: bytes, ad: bytes, plaintext: bytes) -> SealedMessage:
    """Seal in nonce-respecting mode.

    The caller must never reuse a (key, nonce) pair; confidentiality and
    authenticity both degrade if it does.
    """
    n = key.cipher.block_len
    if len(nonce) != nr_nonce_len(n):
        raise ValueError(f"nonce must be {nr_nonce_len(n)} bytes, got {len(nonce)}")
    blocks = _blocks(pkcs7_pad(plaintext, n), n)
    checksum = bytes(n)
    out = []
    for j, p in enumerate(blocks):
        checksum = xor_bytes(checksum, p)
        out.append(tweak_encrypt(key, encode_nr_msg_tweak(0, nonce, j, n), p))
    ftag = tweak_encrypt(key, encode_nr_msg_tweak(1, nonce, len(blocks), n), checksum)
    tag = xor_bytes(ftag, compute_auth(key, ad))
    return SealedMessage(b"".join(out), tag, nonce, AeadMode.NONCE_RESPECTING)


def open_nr(key: TweakableKey, nonce: bytes, ad: bytes, ciphertext: bytes, tag: bytes) -> bytes:
    """Open a nonce-respecting message, or raise :class:`AuthenticationError`."""
    n = key.cipher.block_len
    if len(nonce) != nr_nonce_len(n):
        raise ValueError(f"nonce must be {nr_nonce_len(n)} bytes, got {len(nonce)}")
    if len(tag) != n:
        raise ValueError(f"tag must be {n} bytes, got {len(tag)}")
    if not ciphertext or len(ciphertext) % n:
        raise ValueError("ciphertext must be a positive multiple of the block size")
    checksum = bytes(n)
    plain = []
    for j, c in enumerate(_blocks(ciphertext, n)):
        p = tweak_decrypt(key, encode_nr_msg_tweak(0, nonce, j, n), c)
        checksum = xor_bytes(checksum, p)
        plain.append(p)
    ftag = tweak_encrypt(key, encode_nr_msg_tweak(1, nonce, len(plain), n), checksum)
    expected = xor_bytes(ftag, compute_auth(key, ad))
    if not hmac.compare_digest(expected, tag):
        raise AuthenticationError("authentication failed")
    try:
        return pkcs7_unpad(b"".join(plain), n)
    except ValueError:
        # Indistinguishable from a tag mismatch: no padding oracle.
        raise AuthenticationError("authentication failed") from None


def seal_mr(key: TweakableKey, nonce: bytes, ad: bytes, plaintext: bytes) -> SealedMessage:
    """Seal in misuse-resistant mode; deterministic in all four inputs."""
    n = key.cipher.block_len
    if len(nonce) != mr_nonce_len(n):
        raise ValueError(f"nonce must be {mr_nonce_len(n)} bytes, got {len(nonce)}")
    blocks = _blocks(pkcs7_pad(plaintext, n), n)
    counter_nonce = nonce[: nr_nonce_len(n)]
    tag = compute_auth(key, ad)
    for j, p in enumerate(blocks):
        tag = xor_bytes(tag, tweak_encrypt(key, encode_nr_msg_tweak(0, counter_nonce, j, n), p))
    tag = tweak_encrypt(key, encode_mr_tag_tweak(nonce, n), tag)
    seed = b"\x00" + nonce
    out = [
        xor_bytes(p, tweak_encrypt(key, encode_mr_stream_tweak(tag, j, n), seed))
        for j, p in enumerate(blocks)
    ]
    return SealedMessage(b"".join(out), tag, nonce, AeadMode.MISUSE_RESISTANT)


def open_mr(key: TweakableKey, nonce: bytes, ad: bytes, ciphertext: bytes, tag: bytes) -> bytes:
    """Open a misuse-resistant message, or raise :class:`AuthenticationError`.

    The keystream is regenerated from the received tag, so the candidate
    plaintext exists internally before verification; it is never returned
    or leaked on failure.
    """
    n = key.cipher.block_len
    if len(nonce) != mr_nonce_len(n):
        raise ValueError(f"nonce must be {mr_nonce_len(n)} bytes, got {len(nonce)}")
    if len(tag) != n:
        raise ValueError(f"tag must be {n} bytes, got {len(tag)}")
    if not ciphertext or len(ciphertext) % n:
        raise ValueError("ciphertext must be a positive multiple of the block size")
    seed = b"\x00" + nonce
    plain = [
        xor_bytes(c, tweak_encrypt(key, encode_mr_stream_tweak(tag, j, n), seed))
        for j, c in enumerate(_blocks(ciphertext, n))
    ]
    counter_nonce = nonce[: nr_nonce_len(n)]
    expected = compute_auth(key, ad)
    for j, p in enumerate(plain):
        expected = xor_bytes(expected, tweak_encrypt(key, encode_nr_msg_tweak(0, counter_nonce, j, n), p))
    expected = tweak_encrypt(key, encode_mr_tag_tweak(nonce, n), expected)
    if not hmac.compare_digest(expected, tag):
        raise AuthenticationError("authentication failed")
    try:
        return pkcs7_unpad(b"".join(plain), n)
    except ValueError:
        raise AuthenticationError("authentication failed") from None
