"""SHAKE128 as an arbitrary-output-length function over byte strings."""

import hashlib

__all__ = ["shake128"]


def shake128(data: bytes, out_len: int) -> bytes:
    """Return ``out_len`` bytes of SHAKE128(``data``).

    Outputs for the same input are prefixes of one another, so a shorter
    digest is always the prefix of a longer one.
    """
    if out_len < 1:
        raise ValueError("out_len must be at least 1")
    return hashlib.shake_128(data).digest(out_len)
