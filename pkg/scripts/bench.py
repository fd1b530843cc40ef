#!/usr/bin/env python3
"""Throughput measurement for both modes over AES-128.

Each block costs one SHAKE squeeze plus one fresh-key AES call, so the
numbers here are dominated by per-block subkey derivation, not by AES
itself.
"""

import argparse
import os
import time

from tortoise.aead import AeadMode, nonce_length, open_mr, open_nr, seal_mr, seal_nr
from tortoise.block_cipher import AES128
from tortoise.tweakable import TweakableKey


def bench(mib: float) -> None:
    payload = os.urandom(int(mib * (1 << 20)))
    key = TweakableKey(os.urandom(16), AES128)
    for mode, seal, open_fn in (
        (AeadMode.NONCE_RESPECTING, seal_nr, open_nr),
        (AeadMode.MISUSE_RESISTANT, seal_mr, open_mr),
    ):
        nonce = os.urandom(nonce_length(mode))
        t0 = time.perf_counter()
        sealed = seal(key, nonce, b"", payload)
        t_seal = time.perf_counter() - t0
        t0 = time.perf_counter()
        back = open_fn(key, nonce, b"", sealed.ciphertext, sealed.tag)
        t_open = time.perf_counter() - t0
        assert back == payload
        print(
            f"{mode.value}: seal {mib / t_seal:6.2f} MiB/s  "
            f"open {mib / t_open:6.2f} MiB/s  ({mib:.1f} MiB payload)"
        )


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--mib", type=float, default=1.0, help="payload size in MiB")
    args = parser.parse_args()
    bench(args.mib)
