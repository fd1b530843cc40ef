import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tortoise.aead import (
    AeadMode,
    AuthenticationError,
    compute_auth,
    nonce_length,
    open_mr,
    open_nr,
    pkcs7_pad,
    pkcs7_unpad,
    seal_mr,
    seal_nr,
)
from tortoise.block_cipher import AES128, TOY
from tortoise.tweakable import (
    TweakableKey,
    encode_ad_tweak,
    encode_nr_msg_tweak,
    tweak_encrypt,
    xor_bytes,
)

ZERO_KEY = TweakableKey(bytes(16), AES128)

# Frozen from composed AES + SHAKE oracles: all-zero key and nonce, empty
# associated data, empty plaintext.
NR_KAT_CT = bytes.fromhex("c44c93c4b9387a948e32e47e8ddcf4d7")
NR_KAT_TAG = bytes.fromhex("cec892afe1dbcb5be3a594efc1afc870")
MR_KAT_CT = bytes.fromhex("56221e8bff761bc349d1905e6c8c0e11")
MR_KAT_TAG = bytes.fromhex("51b5e24e0cb461a157fab256d8f5fbc8")
AUTH_EMPTY_AD = bytes.fromhex("5fba08572a71a90f1bea4153f87527f5")


# --- padding -------------------------------------------------------------

def test_pad_empty():
    assert pkcs7_pad(b"", 16) == bytes([16]) * 16


def test_pad_fifteen():
    data = bytes(range(15))
    assert pkcs7_pad(data, 16) == data + b"\x01"


def test_pad_aligned_adds_full_block():
    data = bytes(16)
    assert pkcs7_pad(data, 16) == data + bytes([16]) * 16


@given(st.binary(max_size=3 * 16 + 5), st.integers(1, 255))
def test_pad_unpad_inverse(data, n):
    padded = pkcs7_pad(data, n)
    assert len(padded) % n == 0 and len(padded) > len(data)
    assert pkcs7_unpad(padded, n) == data


def test_unpad_rejects_zero_byte():
    with pytest.raises(ValueError):
        pkcs7_unpad(bytes(15) + b"\x00", 16)


def test_unpad_rejects_overlong_pad():
    with pytest.raises(ValueError):
        pkcs7_unpad(bytes([0x11]) * 16, 16)


def test_unpad_rejects_inconsistent_tail():
    with pytest.raises(ValueError):
        pkcs7_unpad(bytes(14) + b"\x01\x02", 16)


def test_unpad_rejects_ragged_length():
    with pytest.raises(ValueError):
        pkcs7_unpad(bytes(15), 16)
    with pytest.raises(ValueError):
        pkcs7_unpad(b"", 16)


def test_pad_block_size_range():
    with pytest.raises(ValueError):
        pkcs7_pad(b"x", 0)
    with pytest.raises(ValueError):
        pkcs7_pad(b"x", 256)


# --- associated-data accumulator -----------------------------------------

def test_auth_empty_ad_kat():
    assert compute_auth(ZERO_KEY, b"") == AUTH_EMPTY_AD


def test_auth_single_block():
    ad = b"header bytes"
    block = pkcs7_pad(ad, 16)
    assert compute_auth(ZERO_KEY, ad) == tweak_encrypt(ZERO_KEY, encode_ad_tweak(0), block)


def test_auth_order_independent():
    ad = bytes(range(40))
    blocks = [pkcs7_pad(ad, 16)[i : i + 16] for i in range(0, 48, 16)]
    acc = bytes(16)
    for i, block in reversed(list(enumerate(blocks))):
        acc = xor_bytes(acc, tweak_encrypt(ZERO_KEY, encode_ad_tweak(i), block))
    assert compute_auth(ZERO_KEY, ad) == acc


# --- nonce-respecting mode ------------------------------------------------

def test_seal_nr_zero_kat():
    sealed = seal_nr(ZERO_KEY, bytes(8), b"", b"")
    assert sealed.ciphertext == NR_KAT_CT
    assert sealed.tag == NR_KAT_TAG
    assert sealed.mode is AeadMode.NONCE_RESPECTING
    assert open_nr(ZERO_KEY, bytes(8), b"", NR_KAT_CT, NR_KAT_TAG) == b""


def test_seal_nr_distinct_nonces_distinct_ciphertexts():
    rng = random.Random(0x40)
    pt = b"same plaintext for both"
    for _ in range(50):
        n1, n2 = rng.randbytes(8), rng.randbytes(8)
        if n1 == n2:
            continue
        assert seal_nr(ZERO_KEY, n1, b"", pt).ciphertext != seal_nr(ZERO_KEY, n2, b"", pt).ciphertext


def test_nr_block_permutation_preserves_tag():
    rng = random.Random(0x9E12)
    key = TweakableKey(rng.randbytes(16), AES128)
    nonce = rng.randbytes(8)
    blocks = [rng.randbytes(16) for _ in range(3)]
    base = seal_nr(key, nonce, b"", b"".join(blocks))
    for perm in ((1, 0, 2), (2, 1, 0), (1, 2, 0)):
        permuted = seal_nr(key, nonce, b"", b"".join(blocks[p] for p in perm))
        assert permuted.tag == base.tag
        # each position encrypts the relocated block under that position's tweak
        for j, p in enumerate(perm):
            assert permuted.ciphertext[16 * j : 16 * (j + 1)] == tweak_encrypt(
                key, encode_nr_msg_tweak(0, nonce, j), blocks[p]
            )
        # the trailing padding block is untouched
        assert permuted.ciphertext[48:] == base.ciphertext[48:]


def test_open_nr_rejects_bit_flips_sampled():
    sealed = seal_nr(ZERO_KEY, bytes(8), b"ad", b"attack at dawn")
    for bit in range(0, len(sealed.ciphertext) * 8, 7):
        bad = xor_bytes(sealed.ciphertext, (1 << bit).to_bytes(len(sealed.ciphertext), "big"))
        with pytest.raises(AuthenticationError):
            open_nr(ZERO_KEY, bytes(8), b"ad", bad, sealed.tag)
    with pytest.raises(AuthenticationError):
        open_nr(ZERO_KEY, bytes(8), b"AD", sealed.ciphertext, sealed.tag)
    with pytest.raises(AuthenticationError):
        open_nr(ZERO_KEY, b"\x01" + bytes(7), b"ad", sealed.ciphertext, sealed.tag)


def test_open_nr_truncation_rejected():
    sealed = seal_nr(ZERO_KEY, bytes(8), b"", bytes(40))
    with pytest.raises(AuthenticationError):
        open_nr(ZERO_KEY, bytes(8), b"", sealed.ciphertext[:-16], sealed.tag)
    one_block = seal_nr(ZERO_KEY, bytes(8), b"", b"")
    with pytest.raises(ValueError):
        open_nr(ZERO_KEY, bytes(8), b"", one_block.ciphertext[:-16], one_block.tag)


def test_nr_argument_errors():
    with pytest.raises(ValueError):
        seal_nr(ZERO_KEY, bytes(15), b"", b"")
    with pytest.raises(ValueError):
        open_nr(ZERO_KEY, bytes(8), b"", bytes(24), bytes(16))
    with pytest.raises(ValueError):
        open_nr(ZERO_KEY, bytes(8), b"", bytes(16), bytes(15))


@settings(max_examples=60)
@given(st.binary(max_size=53), st.binary(max_size=35))
def test_nr_round_trip_aes(pt, ad):
    sealed = seal_nr(ZERO_KEY, b"nonce!!!", ad, pt)
    assert open_nr(ZERO_KEY, b"nonce!!!", ad, sealed.ciphertext, sealed.tag) == pt


@given(
    st.binary(min_size=2, max_size=2),
    st.binary(min_size=1, max_size=1),
    st.binary(max_size=7),
    st.binary(max_size=11),
)
def test_nr_round_trip_toy(key, nonce, ad, pt):
    k = TweakableKey(key, TOY)
    sealed = seal_nr(k, nonce, ad, pt)
    assert len(sealed.ciphertext) % 2 == 0
    assert open_nr(k, nonce, ad, sealed.ciphertext, sealed.tag) == pt


# --- misuse-resistant mode --------------------------------------------------

def test_seal_mr_zero_kat():
    sealed = seal_mr(ZERO_KEY, bytes(15), b"", b"")
    assert sealed.ciphertext == MR_KAT_CT
    assert sealed.tag == MR_KAT_TAG
    assert open_mr(ZERO_KEY, bytes(15), b"", MR_KAT_CT, MR_KAT_TAG) == b""


def test_seal_mr_deterministic():
    nonce = bytes(range(15))
    outs = {
        (seal_mr(ZERO_KEY, nonce, b"ad", b"payload").ciphertext, seal_mr(ZERO_KEY, nonce, b"ad", b"payload").tag)
        for _ in range(20)
    }
    assert len(outs) == 1


def test_mr_single_block_change_changes_tag():
    rng = random.Random(0x3A6)
    nonce = rng.randbytes(15)
    for _ in range(50):
        pt1 = rng.randbytes(48)
        block = rng.randrange(3)
        delta = bytearray(pt1)
        delta[16 * block] ^= 0xFF
        pt2 = bytes(delta)
        assert seal_mr(ZERO_KEY, nonce, b"", pt1).tag != seal_mr(ZERO_KEY, nonce, b"", pt2).tag


def test_open_mr_rejects_bit_flips_sampled():
    nonce = bytes(range(15))
    sealed = seal_mr(ZERO_KEY, nonce, b"ad", b"attack at dawn")
    for bit in range(0, 128, 5):
        bad_tag = xor_bytes(sealed.tag, (1 << bit).to_bytes(16, "big"))
        with pytest.raises(AuthenticationError):
            open_mr(ZERO_KEY, nonce, b"ad", sealed.ciphertext, bad_tag)
    with pytest.raises(AuthenticationError):
        open_mr(ZERO_KEY, nonce, b"da", sealed.ciphertext, sealed.tag)
    with pytest.raises(AuthenticationError):
        open_mr(ZERO_KEY, b"\x80" + nonce[1:], b"ad", sealed.ciphertext, sealed.tag)


def test_mr_tag_swap_both_fail():
    n1, n2 = bytes(15), b"\x01" * 15
    s1 = seal_mr(ZERO_KEY, n1, b"", b"first message")
    s2 = seal_mr(ZERO_KEY, n2, b"", b"second message")
    with pytest.raises(AuthenticationError):
        open_mr(ZERO_KEY, n1, b"", s1.ciphertext, s2.tag)
    with pytest.raises(AuthenticationError):
        open_mr(ZERO_KEY, n2, b"", s2.ciphertext, s1.tag)


def test_mr_failure_reveals_nothing():
    sealed = seal_mr(ZERO_KEY, bytes(15), b"", b"super secret plaintext")
    bad_tag = xor_bytes(sealed.tag, b"\x01" + bytes(15))
    with pytest.raises(AuthenticationError) as exc_info:
        open_mr(ZERO_KEY, bytes(15), b"", sealed.ciphertext, bad_tag)
    assert b"secret" not in str(exc_info.value).encode()
    assert str(exc_info.value) == "authentication failed"


def test_mr_argument_errors():
    with pytest.raises(ValueError):
        seal_mr(ZERO_KEY, bytes(8), b"", b"")
    with pytest.raises(ValueError):
        open_mr(ZERO_KEY, bytes(15), b"", b"", bytes(16))


@settings(max_examples=60)
@given(st.binary(max_size=53), st.binary(max_size=35))
def test_mr_round_trip_aes(pt, ad):
    nonce = b"misuse nonce 15"
    sealed = seal_mr(ZERO_KEY, nonce, ad, pt)
    assert open_mr(ZERO_KEY, nonce, ad, sealed.ciphertext, sealed.tag) == pt


@given(
    st.binary(min_size=2, max_size=2),
    st.binary(min_size=1, max_size=1),
    st.binary(max_size=7),
    st.binary(max_size=11),
)
def test_mr_round_trip_toy(key, nonce, ad, pt):
    k = TweakableKey(key, TOY)
    sealed = seal_mr(k, nonce, ad, pt)
    assert open_mr(k, nonce, ad, sealed.ciphertext, sealed.tag) == pt


# --- cross-mode properties ---------------------------------------------------

def test_domain_separation_ad_vs_plaintext():
    data = b"the very same bytes"
    nr_as_ad = seal_nr(ZERO_KEY, bytes(8), data, b"")
    nr_as_pt = seal_nr(ZERO_KEY, bytes(8), b"", data)
    assert nr_as_ad.tag != nr_as_pt.tag
    mr_as_ad = seal_mr(ZERO_KEY, bytes(15), data, b"")
    mr_as_pt = seal_mr(ZERO_KEY, bytes(15), b"", data)
    assert mr_as_ad.tag != mr_as_pt.tag


def test_empty_vs_padded_ad_distinguished():
    # ("", x) and (x, "") must never collapse to the same authenticated view
    sealed = seal_nr(ZERO_KEY, bytes(8), b"", b"x")
    with pytest.raises(AuthenticationError):
        open_nr(ZERO_KEY, bytes(8), b"x", sealed.ciphertext, sealed.tag)


def test_nonce_length_helper():
    assert nonce_length(AeadMode.NONCE_RESPECTING) == 8
    assert nonce_length(AeadMode.MISUSE_RESISTANT) == 15
    assert nonce_length(AeadMode.NONCE_RESPECTING, 2) == 1
    assert nonce_length(AeadMode.MISUSE_RESISTANT, 2) == 1
