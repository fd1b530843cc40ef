"""Block-cipher contract and the two built-in instantiations.

Everything above this layer is generic over :class:`CipherSpec`: a fixed
block length, a fixed key length, and an encrypt/decrypt pair that is a
permutation of single blocks for every key.  Two specs ship with the
package:

* ``AES128`` - the production cipher, delegated to the ``cryptography``
  package and gated by the repository's known-answer vectors.
* ``TOY`` - a deliberately weak 16-bit substitution-permutation network.
  Its entire codomain can be enumerated on a desktop, which is what the
  brute-force verification harness needs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from cryptography.hazmat.primitives.ciphers import Cipher, algorithms, modes

__all__ = [
    "CipherSpec",
    "AES128",
    "TOY",
    "CIPHERS",
    "get_cipher",
    "aes128_encrypt_block",
    "aes128_decrypt_block",
    "toy_encrypt_block",
    "toy_decrypt_block",
]


def _check_len(name: str, value: bytes, expected: int) -> None:
    if len(value) != expected:
        raise ValueError(f"{name} must be {expected} bytes, got {len(value)}")


@dataclass(frozen=True)
class CipherSpec:
    """A pluggable single-block cipher.

    ``encrypt_block(key, block)`` must be a bijection on ``block_len``-byte
    strings for every ``key_len``-byte key, and ``decrypt_block`` its exact
    inverse.  Specs are immutable and safe to share across threads.
    """

    name: str
    block_len: int
    key_len: int
    encrypt_block: Callable[[bytes, bytes], bytes]
    decrypt_block: Callable[[bytes, bytes], bytes]


# --- AES-128 -----------------------------------------------------------

def aes128_encrypt_block(key: bytes, block: bytes) -> bytes:
    """Encrypt a single 16-byte block with AES-128."""
    _check_len("key", key, 16)
    _check_len("block", block, 16)
    return Cipher(algorithms.AES(key), modes.ECB()).encryptor().update(block)


def aes128_decrypt_block(key: bytes, block: bytes) -> bytes:
    """Decrypt a single 16-byte block with AES-128."""
    _check_len("key", key, 16)
    _check_len("block", block, 16)
    return Cipher(algorithms.AES(key), modes.ECB()).decryptor().update(block)


# --- Toy cipher --------------------------------------------------------
#
# 4-round SPN on 16-bit blocks: round-key XOR, 4-bit S-box on each nibble,
# rotate one nibble left, then a final whitening key.  Weak on purpose; it
# exists so the generic framework can be checked exhaustively.

_SBOX4 = (0xC, 0x5, 0x6, 0xB, 0x9, 0x0, 0xA, 0xD, 0x3, 0xE, 0xF, 0x8, 0x4, 0x7, 0x1, 0x2)


def _rotl16(x: int, r: int) -> int:
    return ((x << r) | (x >> (16 - r))) & 0xFFFF


def _sub16(x: int) -> int:
    return (
        (_SBOX4[x >> 12] << 12)
        | (_SBOX4[(x >> 8) & 0xF] << 8)
        | (_SBOX4[(x >> 4) & 0xF] << 4)
        | _SBOX4[x & 0xF]
    )


# One table per direction: substitute every nibble, then rotate a nibble left.
_TOY_FWD = [_rotl16(_sub16(x), 4) for x in range(1 << 16)]
_TOY_INV = [0] * (1 << 16)
for _x, _y in enumerate(_TOY_FWD):
    _TOY_INV[_y] = _x
del _x, _y

_TOY_RC = (0x243F, 0x6A88, 0x85A3, 0x08D3, 0x1319)


@lru_cache(maxsize=4096)
def _toy_round_keys(key: int) -> tuple[int, ...]:
    return tuple(_rotl16(key, (3 * r) % 16) ^ _TOY_RC[r] for r in range(5))


def toy_encrypt_block(key: bytes, block: bytes) -> bytes:
    _check_len("key", key, 2)
    _check_len("block", block, 2)
    rks = _toy_round_keys(int.from_bytes(key, "big"))
    s = int.from_bytes(block, "big")
    for r in range(4):
        s = _TOY_FWD[s ^ rks[r]]
    return (s ^ rks[4]).to_bytes(2, "big")


def toy_decrypt_block(key: bytes, block: bytes) -> bytes:
    _check_len("key", key, 2)
    _check_len("block", block, 2)
    rks = _toy_round_keys(int.from_bytes(key, "big"))
    s = int.from_bytes(block, "big") ^ rks[4]
    for r in (3, 2, 1, 0):
        s = _TOY_INV[s] ^ rks[r]
    return s.to_bytes(2, "big")


AES128 = CipherSpec("aes128", 16, 16, aes128_encrypt_block, aes128_decrypt_block)
TOY = CipherSpec("toy", 2, 2, toy_encrypt_block, toy_decrypt_block)

CIPHERS: dict[str, CipherSpec] = {spec.name: spec for spec in (AES128, TOY)}


def get_cipher(name: str) -> CipherSpec:
    try:
        return CIPHERS[name]
    except KeyError:
        raise ValueError(f"unknown cipher {name!r}; known: {sorted(CIPHERS)}") from None
