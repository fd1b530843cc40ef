"""Tortoise: turn any block cipher into an AEAD.

A generic adapter derives a tweakable cipher from any fixed-size block
cipher (per-tweak subkey and mask squeezed from SHAKE128), and two AEAD
modes sit on top: a fast nonce-respecting mode and a deterministic
nonce-misuse-resistant mode.
"""

from .aead import (
    AeadMode,
    AuthenticationError,
    SealedMessage,
    compute_auth,
    nonce_length,
    open_mr,
    open_nr,
    pkcs7_pad,
    pkcs7_unpad,
    seal_mr,
    seal_nr,
)
from .block_cipher import AES128, CIPHERS, TOY, CipherSpec, get_cipher
from .tweakable import (
    Tweak,
    TweakableKey,
    derive_subkey_and_mask,
    encode_ad_tweak,
    encode_mr_stream_tweak,
    encode_mr_tag_tweak,
    encode_nr_msg_tweak,
    tweak_decrypt,
    tweak_encrypt,
)
from .xof import shake128

__version__ = "0.1.0"

__all__ = [
    "AES128",
    "AeadMode",
    "AuthenticationError",
    "CIPHERS",
    "CipherSpec",
    "SealedMessage",
    "TOY",
    "Tweak",
    "TweakableKey",
    "compute_auth",
    "derive_subkey_and_mask",
    "encode_ad_tweak",
    "encode_mr_stream_tweak",
    "encode_mr_tag_tweak",
    "encode_nr_msg_tweak",
    "get_cipher",
    "nonce_length",
    "open_mr",
    "open_nr",
    "pkcs7_pad",
    "pkcs7_unpad",
    "seal_mr",
    "seal_nr",
    "shake128",
    "tweak_decrypt",
    "tweak_encrypt",
    "__version__",
]
