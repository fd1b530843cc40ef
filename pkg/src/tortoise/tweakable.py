"""Tweakable cipher built from any block cipher by hashing (key, tweak).

A single SHAKE128 squeeze of ``master_key || tweak`` yields a per-tweak
subkey plus an n-byte mask; a block is encrypted under the subkey and the
mask is XORed onto the result.  Distinct tweaks therefore select
independent-looking permutations without touching the underlying cipher's
round structure, and any :class:`~tortoise.block_cipher.CipherSpec` can be
dropped in unchanged.

Tweaks are exactly one block wide.  Byte 0 carries a 4-bit domain prefix
in its high nibble:

* ``0000`` message block (nonce + block counter),
* ``0001`` tag derivation (nonce + block count, or the misuse-resistant
  nonce on its own),
* ``0010`` associated-data block (block index only).

All indices and counters are big-endian.  With 16-byte blocks the counter
layouts carry an 8-byte nonce and the misuse-resistant tag layout a
15-byte nonce; see the encoder docstrings for how the fields shrink on
smaller blocks.
"""

from __future__ import annotations

from dataclasses import dataclass

from .block_cipher import CipherSpec
from .xof import shake128

__all__ = [
    "Tweak",
    "TweakableKey",
    "xor_bytes",
    "nr_nonce_len",
    "mr_nonce_len",
    "encode_ad_tweak",
    "encode_nr_msg_tweak",
    "encode_mr_tag_tweak",
    "encode_mr_stream_tweak",
    "derive_subkey_and_mask",
    "tweak_encrypt",
    "tweak_decrypt",
]

# Counters beyond 2^64 blocks are outside any practical message size.
_STREAM_COUNTER_LIMIT = 1 << 64


def xor_bytes(a: bytes, b: bytes) -> bytes:
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    return (int.from_bytes(a, "big") ^ int.from_bytes(b, "big")).to_bytes(len(a), "big")


@dataclass(frozen=True)
class Tweak:
    """One block's worth of tweak bytes, as produced by the encoders."""

    raw: bytes


@dataclass(frozen=True)
class TweakableKey:
    """Master key bound to the cipher it will be used with."""

    master_key: bytes
    cipher: CipherSpec

    def __post_init__(self) -> None:
        if len(self.master_key) != self.cipher.key_len:
            raise ValueError(
                f"master_key must be {self.cipher.key_len} bytes for "
                f"{self.cipher.name}, got {len(self.master_key)}"
            )


def nr_nonce_len(block_len: int) -> int:
    """Nonce width for the counter layouts: 8 bytes at n=16, n-1 below."""
    return min(8, block_len - 1)


def mr_nonce_len(block_len: int) -> int:
    """Nonce width for the misuse-resistant mode: all bytes after the prefix."""
    return block_len - 1


def encode_ad_tweak(i: int, block_len: int = 16) -> Tweak:
    """Tweak for associated-data block ``i``: 0x20, then the index big-endian."""
    limit = 256 ** (block_len - 1)
    if not 0 <= i < limit:
        raise ValueError(f"ad block index {i} out of range [0, {limit})")
    return Tweak(b"\x20" + i.to_bytes(block_len - 1, "big"))


def encode_nr_msg_tweak(prefix: int, nonce: bytes, j: int, block_len: int = 16) -> Tweak:
    """Counter tweak: prefix nibble, nonce, block counter.

    ``prefix`` 0 marks a message block, 1 the tag-derivation block.  The
    counter occupies the bytes left after the nonce (7 bytes at n=16); when
    none remain, as with 2-byte blocks, it moves into the low nibble of
    byte 0 and is limited to 15.
    """
    if prefix not in (0, 1):
        raise ValueError("prefix must be 0 (message) or 1 (tag)")
    nlen = nr_nonce_len(block_len)
    if len(nonce) != nlen:
        raise ValueError(f"nonce must be {nlen} bytes, got {len(nonce)}")
    counter_len = block_len - 1 - nlen
    if counter_len:
        if not 0 <= j < 256 ** counter_len:
            raise ValueError(f"block counter {j} out of range [0, {256 ** counter_len})")
        return Tweak(bytes([prefix << 4]) + nonce + j.to_bytes(counter_len, "big"))
    if not 0 <= j < 16:
        raise ValueError(f"block counter {j} out of range [0, 16)")
    return Tweak(bytes([(prefix << 4) | j]) + nonce)


def encode_mr_tag_tweak(nonce: bytes, block_len: int = 16) -> Tweak:
    """Tag tweak for the misuse-resistant mode: 0x10, then the full nonce."""
    nlen = mr_nonce_len(block_len)
    if len(nonce) != nlen:
        raise ValueError(f"nonce must be {nlen} bytes, got {len(nonce)}")
    return Tweak(b"\x10" + nonce)


def encode_mr_stream_tweak(tag: bytes, j: int, block_len: int = 16) -> Tweak:
    """Keystream tweak: the tag XOR the block counter as one big-endian block."""
    if len(tag) != block_len:
        raise ValueError(f"tag must be {block_len} bytes, got {len(tag)}")
    limit = min(_STREAM_COUNTER_LIMIT, 256 ** block_len)
    if not 0 <= j < limit:
        raise ValueError(f"block counter {j} out of range [0, {limit})")
    return Tweak(xor_bytes(tag, j.to_bytes(block_len, "big")))


def derive_subkey_and_mask(key: TweakableKey, tweak: Tweak) -> tuple[bytes, bytes]:
    """One SHAKE128 squeeze of ``master_key || tweak``: subkey first, mask after."""
    spec = key.cipher
    if len(tweak.raw) != spec.block_len:
        raise ValueError(
            f"tweak must be {spec.block_len} bytes, got {len(tweak.raw)}"
        )
    out = shake128(key.master_key + tweak.raw, spec.key_len + spec.block_len)
    return out[: spec.key_len], out[spec.key_len :]


def tweak_encrypt(key: TweakableKey, tweak: Tweak, block: bytes) -> bytes:
    """Encrypt one block under the permutation selected by ``tweak``."""
    spec = key.cipher
    if len(block) != spec.block_len:
        raise ValueError(f"block must be {spec.block_len} bytes, got {len(block)}")
    subkey, mask = derive_subkey_and_mask(key, tweak)
    return xor_bytes(spec.encrypt_block(subkey, block), mask)


def tweak_decrypt(key: TweakableKey, tweak: Tweak, block: bytes) -> bytes:
    """Invert :func:`tweak_encrypt` for the same key and tweak."""
    spec = key.cipher
    if len(block) != spec.block_len:
        raise ValueError(f"block must be {spec.block_len} bytes, got {len(block)}")
    subkey, mask = derive_subkey_and_mask(key, tweak)
    return spec.decrypt_block(subkey, xor_bytes(block, mask))
