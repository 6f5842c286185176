from __future__ import annotations

import itertools

import pytest

from relaywalk.coding import CodedChunk, CodeParams, decode, encode


def random_message(rng_seed: int, length: int) -> bytes:
    import numpy as np

    rng = np.random.default_rng(rng_seed)
    return rng.integers(0, 256, size=length, dtype=np.uint8).tobytes()


def test_chunk_len_is_ceiling_division():
    assert CodeParams(m=10, k=3, n=5).chunk_len == 4
    assert CodeParams(m=9, k=3, n=5).chunk_len == 3
    assert CodeParams(m=1, k=4, n=6).chunk_len == 1


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(m=0, k=1, n=1),
        dict(m=5, k=0, n=3),
        dict(m=5, k=4, n=3),
        dict(m=5, k=1, n=256),
        dict(m=5, k=1, n=0),
    ],
)
def test_code_params_validation(kwargs):
    with pytest.raises(ValueError):
        CodeParams(**kwargs)


def test_encode_produces_n_indexed_chunks():
    params = CodeParams(m=12, k=3, n=7)
    chunks = encode(random_message(0, 12), params)
    assert [c.index for c in chunks] == list(range(7))
    assert all(len(c.payload) == params.chunk_len for c in chunks)


def test_systematic_prefix_carries_the_message():
    params = CodeParams(m=12, k=3, n=7)
    message = random_message(1, 12)
    chunks = encode(message, params)
    assert b"".join(c.payload for c in chunks[:3]) == message


def test_zero_padding_and_truncation():
    params = CodeParams(m=5, k=3, n=4)  # chunk_len 2, one pad byte
    message = b"hello"
    chunks = encode(message, params)
    assert chunks[2].payload == b"o\x00"
    assert decode(chunks[:3], params) == message


def test_single_data_chunk_is_replication():
    params = CodeParams(m=6, k=1, n=5)
    message = b"relays"
    chunks = encode(message, params)
    assert all(c.payload == message for c in chunks)
    for c in chunks:
        assert decode([c], params) == message


def test_equal_counts_is_identity():
    params = CodeParams(m=8, k=4, n=4)
    message = random_message(2, 8)
    chunks = encode(message, params)
    assert b"".join(c.payload for c in chunks) == message
    assert decode(chunks, params) == message


def test_any_k_subset_decodes():
    for k, n in [(1, 4), (2, 5), (3, 5), (4, 5), (5, 5)]:
        params = CodeParams(m=11, k=k, n=n)
        message = random_message(10 * n + k, 11)
        chunks = encode(message, params)
        for subset in itertools.combinations(chunks, k):
            assert decode(list(subset), params) == message


def test_decode_order_does_not_matter():
    params = CodeParams(m=10, k=3, n=6)
    message = random_message(3, 10)
    chunks = encode(message, params)
    picked = [chunks[5], chunks[0], chunks[3]]
    assert decode(picked, params) == decode(picked[::-1], params) == message


def test_encode_validation():
    params = CodeParams(m=4, k=2, n=3)
    with pytest.raises(ValueError):
        encode(b"", params)
    with pytest.raises(ValueError):
        encode(b"12345", params)


def test_decode_validation():
    params = CodeParams(m=4, k=2, n=3)
    chunks = encode(b"abcd", params)
    with pytest.raises(ValueError):
        decode(chunks[:1], params)  # too few
    with pytest.raises(ValueError):
        decode(chunks, params)  # too many
    with pytest.raises(ValueError):
        decode([chunks[0], chunks[0]], params)  # duplicate index
    with pytest.raises(ValueError):
        decode([chunks[0], CodedChunk(9, chunks[1].payload)], params)  # bad index
    with pytest.raises(ValueError):
        decode([chunks[0], CodedChunk(1, b"x")], params)  # bad payload length


def test_encode_is_deterministic():
    params = CodeParams(m=16, k=4, n=8)
    message = random_message(4, 16)
    a = encode(message, params)
    b = encode(message, params)
    assert [(c.index, c.payload) for c in a] == [(c.index, c.payload) for c in b]


def test_corrupted_chunk_changes_decode():
    params = CodeParams(m=6, k=2, n=4)
    message = b"secret"
    chunks = encode(message, params)
    park = bytearray(chunks[3].payload)
    park[0] ^= 0xFF
    tampered = CodedChunk(3, bytes(park))
    assert decode([chunks[2], tampered], params) != message
