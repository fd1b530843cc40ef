"""File encryption CLI and the on-disk envelope format.

Envelope layout (all integers big-endian)::

    magic   4 bytes  b"TORT"
    version 1 byte   0x01
    mode    1 byte   0x00 nonce-respecting, 0x01 misuse-resistant
    nonce_len 1 byte 8 for mode 0x00, 15 for mode 0x01
    nonce   nonce_len bytes
    tag     16 bytes
    ct_len  8 bytes
    ct      ct_len bytes (positive multiple of 16)

Associated data is bound to the message but not stored; the same bytes
must be supplied again at decryption.

Exit codes: 0 success, 1 usage/IO/malformed input, 2 authentication
failure, 3 known-answer verification failure.
"""

from __future__ import annotations

import argparse
import secrets
import sys
from dataclasses import dataclass
from pathlib import Path

from .aead import AeadMode, AuthenticationError, nonce_length, open_mr, open_nr, seal_mr, seal_nr
from .block_cipher import AES128, CIPHERS
from .kat import differential_check, generate_kats, parse_kat_text, serialize_records, verify_kats
from .tweakable import TweakableKey

__all__ = ["Envelope", "EnvelopeError", "pack_envelope", "parse_envelope", "main"]

MAGIC = b"TORT"
VERSION = 1

_MODE_TO_BYTE = {AeadMode.NONCE_RESPECTING: 0x00, AeadMode.MISUSE_RESISTANT: 0x01}
_BYTE_TO_MODE = {v: k for k, v in _MODE_TO_BYTE.items()}

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_AUTH = 2
EXIT_KAT = 3


class EnvelopeError(ValueError):
    """The input does not parse as a well-formed envelope."""


@dataclass(frozen=True)
class Envelope:
    mode: AeadMode
    nonce: bytes
    tag: bytes
    ciphertext: bytes


def pack_envelope(env: Envelope) -> bytes:
    if len(env.nonce) != nonce_length(env.mode):
        raise EnvelopeError(f"nonce must be {nonce_length(env.mode)} bytes for mode {env.mode.value}")
    if len(env.tag) != 16:
        raise EnvelopeError("tag must be 16 bytes")
    if not env.ciphertext or len(env.ciphertext) % 16:
        raise EnvelopeError("ciphertext must be a positive multiple of 16 bytes")
    return (
        MAGIC
        + bytes([VERSION, _MODE_TO_BYTE[env.mode], len(env.nonce)])
        + env.nonce
        + env.tag
        + len(env.ciphertext).to_bytes(8, "big")
        + env.ciphertext
    )


def parse_envelope(blob: bytes) -> Envelope:
    if len(blob) < 7 or blob[:4] != MAGIC:
        raise EnvelopeError("bad magic")
    if blob[4] != VERSION:
        raise EnvelopeError(f"unsupported version {blob[4]}")
    if blob[5] not in _BYTE_TO_MODE:
        raise EnvelopeError(f"unknown mode byte {blob[5]:#04x}")
    mode = _BYTE_TO_MODE[blob[5]]
    nonce_len = blob[6]
    if nonce_len != nonce_length(mode):
        raise EnvelopeError(f"nonce_len {nonce_len} invalid for mode {mode.value}")
    need = 7 + nonce_len + 16 + 8
    if len(blob) < need:
        raise EnvelopeError("truncated header")
    nonce = blob[7 : 7 + nonce_len]
    tag = blob[7 + nonce_len : 7 + nonce_len + 16]
    ct_len = int.from_bytes(blob[need - 8 : need], "big")
    if ct_len == 0 or ct_len % 16:
        raise EnvelopeError("ct_len must be a positive multiple of 16")
    if len(blob) != need + ct_len:
        raise EnvelopeError(f"expected {need + ct_len} bytes total, got {len(blob)}")
    return Envelope(mode, nonce, tag, blob[need:])


def _fail(message: str) -> None:
    print(f"error: {message}", file=sys.stderr)


def _read_key(args: argparse.Namespace) -> bytes:
    if args.key_hex is not None:
        key = bytes.fromhex(args.key_hex)
    else:
        raw = Path(args.key_file).read_bytes()
        if len(raw) == 16:
            key = raw
        else:
            key = bytes.fromhex(raw.decode("ascii").strip())
    if len(key) != 16:
        raise ValueError(f"key must be 16 bytes, got {len(key)}")
    return key


def _read_ad(args: argparse.Namespace) -> bytes:
    if args.ad_hex is not None:
        return bytes.fromhex(args.ad_hex)
    if args.ad_file is not None:
        return Path(args.ad_file).read_bytes()
    return b""


def _cmd_encrypt(args: argparse.Namespace) -> int:
    key = TweakableKey(_read_key(args), AES128)
    mode = AeadMode(args.mode)
    if args.nonce_hex is not None:
        nonce = bytes.fromhex(args.nonce_hex)
    else:
        nonce = secrets.token_bytes(nonce_length(mode))
    ad = _read_ad(args)
    plaintext = Path(args.in_path).read_bytes()
    seal = seal_nr if mode is AeadMode.NONCE_RESPECTING else seal_mr
    sealed = seal(key, nonce, ad, plaintext)
    blob = pack_envelope(Envelope(mode, sealed.nonce, sealed.tag, sealed.ciphertext))
    Path(args.out_path).write_bytes(blob)
    return EXIT_OK


def _cmd_decrypt(args: argparse.Namespace) -> int:
    key = TweakableKey(_read_key(args), AES128)
    ad = _read_ad(args)
    env = parse_envelope(Path(args.in_path).read_bytes())
    open_fn = open_nr if env.mode is AeadMode.NONCE_RESPECTING else open_mr
    plaintext = open_fn(key, env.nonce, ad, env.ciphertext, env.tag)
    Path(args.out_path).write_bytes(plaintext)
    return EXIT_OK


def _cmd_kat_generate(args: argparse.Namespace) -> int:
    records = generate_kats(args.seed, args.count, args.cipher)
    Path(args.file).write_text(serialize_records(records))
    print(f"wrote {len(records)} records to {args.file}")
    return EXIT_OK


def _cmd_kat_verify(args: argparse.Namespace) -> int:
    records, errors = parse_kat_text(Path(args.file).read_text())
    report = verify_kats(records)
    report.parse_errors.extend(errors)
    for line in report.lines():
        print(line)
    print(f"{sum(r.ok for r in report.results)}/{len(report.results)} records passed")
    return EXIT_OK if report.ok else EXIT_KAT


def _cmd_kat_diff(args: argparse.Namespace) -> int:
    report = differential_check(args.trials)
    for line in report.lines():
        print(line)
    return EXIT_OK if report.ok else EXIT_KAT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tortoise",
        description="Authenticated file encryption with nonce-respecting and misuse-resistant modes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_key_args(p: argparse.ArgumentParser) -> None:
        group = p.add_mutually_exclusive_group(required=True)
        group.add_argument("--key-hex", help="16-byte key as 32 hex digits")
        group.add_argument("--key-file", help="file holding the key (16 raw bytes or 32 hex digits)")

    def add_ad_args(p: argparse.ArgumentParser) -> None:
        group = p.add_mutually_exclusive_group()
        group.add_argument("--ad-hex", help="associated data as hex (default empty)")
        group.add_argument("--ad-file", help="file holding the associated data")

    enc = sub.add_parser("encrypt", help="seal a file into an envelope")
    add_key_args(enc)
    enc.add_argument("--mode", choices=[m.value for m in AeadMode], required=True)
    nonce_group = enc.add_mutually_exclusive_group(required=True)
    nonce_group.add_argument("--nonce-hex", help="nonce as hex (8 bytes nr, 15 bytes mr)")
    nonce_group.add_argument("--nonce-random", action="store_true", help="draw the nonce from system entropy")
    add_ad_args(enc)
    enc.add_argument("--in", dest="in_path", required=True, help="plaintext input file")
    enc.add_argument("--out", dest="out_path", required=True, help="envelope output file")
    enc.set_defaults(func=_cmd_encrypt)

    dec = sub.add_parser("decrypt", help="open an envelope back into a file")
    add_key_args(dec)
    add_ad_args(dec)
    dec.add_argument("--in", dest="in_path", required=True, help="envelope input file")
    dec.add_argument("--out", dest="out_path", required=True, help="plaintext output file")
    dec.set_defaults(func=_cmd_decrypt)

    kat = sub.add_parser("kat", help="known-answer vector tooling")
    kat_sub = kat.add_subparsers(dest="kat_command", required=True)

    gen = kat_sub.add_parser("generate", help="write a deterministic vector file")
    gen.add_argument("file", help="output path")
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--count", type=int, required=True, help="records per mode")
    gen.add_argument("--cipher", choices=sorted(CIPHERS), default="aes128")
    gen.set_defaults(func=_cmd_kat_generate)

    ver = kat_sub.add_parser("verify", help="replay a vector file bit-exactly")
    ver.add_argument("file", help="vector file to verify")
    ver.set_defaults(func=_cmd_kat_verify)

    diff = kat_sub.add_parser("diff", help="brute-force differential check over the toy cipher")
    diff.add_argument("--trials", type=int, default=1000)
    diff.set_defaults(func=_cmd_kat_diff)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help and 2 for usage errors; remap the latter.
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except AuthenticationError:
        _fail("authentication failed")
        return EXIT_AUTH
    except (EnvelopeError, ValueError) as exc:
        _fail(str(exc))
        return EXIT_USAGE
    except OSError as exc:
        _fail(str(exc))
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
