"""Systematic maximum-distance-separable chunk codec over GF(256).

A message of m bytes is split into k data chunks of ceil(m/k) bytes
(zero-padded) and expanded to n <= 255 coded chunks such that any k of
them reconstruct the message.  Chunks 0..k-1 are the data itself; the
remaining n-k are parity.

The generator is a Vandermonde matrix on distinct field points reduced
to systematic form.  Multiplying a Vandermonde matrix on the right by an
invertible matrix preserves the every-k-rows-invertible property, which
is exactly the any-k-of-n decode guarantee.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

_PRIM_POLY = 0x11D  # x^8 + x^4 + x^3 + x^2 + 1

# exp/log tables for the multiplicative group; EXP is doubled so that
# EXP[log a + log b] never needs a modulo
_EXP = np.zeros(510, dtype=np.uint8)
_LOG = np.zeros(256, dtype=np.int32)
_x = 1
for _i in range(255):
    _EXP[_i] = _x
    _LOG[_x] = _i
    _x <<= 1
    if _x & 0x100:
        _x ^= _PRIM_POLY
_EXP[255:510] = _EXP[:255]


def _gf_mul(a: int, b: int) -> int:
    if a == 0 or b == 0:
        return 0
    return int(_EXP[int(_LOG[a]) + int(_LOG[b])])


def _gf_inv(a: int) -> int:
    if a == 0:
        raise ZeroDivisionError("0 has no inverse in GF(256)")
    return int(_EXP[255 - int(_LOG[a])])


def _gf_pow(a: int, e: int) -> int:
    if e == 0:
        return 1
    if a == 0:
        return 0
    return int(_EXP[(int(_LOG[a]) * e) % 255])


def _mat_mul(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    rows, inner, cols = len(a), len(b), len(b[0])
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for t in range(inner):
            c = ai[t]
            if c == 0:
                continue
            bt = b[t]
            for j in range(cols):
                if bt[j]:
                    oi[j] ^= _gf_mul(c, bt[j])
    return out


def _mat_inv(m: list[list[int]]) -> list[list[int]]:
    """Gauss-Jordan inverse over GF(256); raises on singular input."""
    k = len(m)
    aug = [list(row) + [1 if i == j else 0 for j in range(k)] for i, row in enumerate(m)]
    for col in range(k):
        pivot = next((r for r in range(col, k) if aug[r][col] != 0), None)
        if pivot is None:
            raise ValueError("singular matrix over GF(256)")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = _gf_inv(aug[col][col])
        aug[col] = [_gf_mul(inv, x) for x in aug[col]]
        for r in range(k):
            if r != col and aug[r][col] != 0:
                c = aug[r][col]
                aug[r] = [x ^ _gf_mul(c, y) for x, y in zip(aug[r], aug[col])]
    return [row[k:] for row in aug]


@lru_cache(maxsize=None)
def _generator(k: int, n: int) -> tuple[tuple[int, ...], ...]:
    """Systematic n x k generator: identity on top, parity rows below."""
    vand = [[_gf_pow(i, j) for j in range(k)] for i in range(n)]
    top_inv = _mat_inv([row[:] for row in vand[:k]])
    gen = _mat_mul(vand, top_inv)
    for i in range(k):  # systematic form is a hard guarantee
        assert gen[i] == [1 if j == i else 0 for j in range(k)]
    return tuple(tuple(row) for row in gen)


@lru_cache(maxsize=None)
def _decode_matrix(k: int, n: int, indices: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    gen = _generator(k, n)
    sub = [list(gen[i]) for i in indices]
    return tuple(tuple(row) for row in _mat_inv(sub))


@dataclass(frozen=True)
class CodeParams:
    """Code geometry: m message bytes, k data chunks, n coded chunks.

    chunk_len is the byte length of every chunk, ceil(m/k); the analytic
    modules use the ideal real-valued length m/k instead.
    """

    m: int
    k: int
    n: int
    chunk_len: int = 0

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("message length must be at least 1 byte")
        if not 1 <= self.k <= self.n:
            raise ValueError("chunk counts must satisfy 1 <= k <= n")
        if self.n > 255:
            raise ValueError("at most 255 coded chunks are supported")
        expected = -(-self.m // self.k)
        if self.chunk_len == 0:
            object.__setattr__(self, "chunk_len", expected)
        elif self.chunk_len != expected:
            raise ValueError("chunk_len must be ceil(m / k)")


@dataclass(frozen=True)
class CodedChunk:
    index: int
    payload: bytes


def _apply(matrix, rows: np.ndarray) -> np.ndarray:
    """Multiply a GF matrix by a stack of payload rows (uint8)."""
    out = np.zeros((len(matrix), rows.shape[1]), dtype=np.uint8)
    for i, mrow in enumerate(matrix):
        acc = out[i]
        for c, vec in zip(mrow, rows):
            if c == 0:
                continue
            if c == 1:
                acc ^= vec
            else:
                nz = vec != 0
                term = np.zeros_like(vec)
                term[nz] = _EXP[_LOG[vec[nz]] + int(_LOG[c])]
                acc ^= term
    return out


def encode(message: bytes, params: CodeParams) -> list[CodedChunk]:
    """Split and encode a message into n coded chunks."""
    if len(message) == 0:
        raise ValueError("message must not be empty")
    if len(message) != params.m:
        raise ValueError(f"message length {len(message)} != m={params.m}")
    k, n, size = params.k, params.n, params.chunk_len
    padded = np.zeros(k * size, dtype=np.uint8)
    padded[: params.m] = np.frombuffer(message, dtype=np.uint8)
    data = padded.reshape(k, size)
    gen =_generator(k, n)
    parity = _apply(gen[k:], data)
    chunks = [CodedChunk(i, data[i].tobytes()) for i in range(k)]
    chunks += [CodedChunk(k + i, parity[i].tobytes()) for i in range(n - k)]
    return chunks


def decode(chunks, params: CodeParams) -> bytes:
    """Reconstruct the message from any k distinct coded chunks."""
    chunks = list(chunks)
    if len(chunks) != params.k:
        raise ValueError(f"need exactly k={params.k} chunks, got {len(chunks)}")
    indices = [c.index for c in chunks]
    if len(set(indices)) != len(indices):
        raise ValueError("duplicate chunk indices")
    for c in chunks:
        if not 0 <= c.index < params.n:
            raise ValueError(f"chunk index {c.index} out of range [0, {params.n})")
        if len(c.payload) != params.chunk_len:
            raise ValueError("chunk payload has the wrong length")
    order = sorted(range(len(chunks)), key=lambda i: indices[i])
    chunks = [chunks[i] for i in order]
    inv = _decode_matrix(params.k, params.n, tuple(c.index for c in chunks))
    received = np.stack(
        [np.frombuffer(c.payload, dtype=np.uint8) for c in chunks]
    )
    data = _apply(inv, received)
    return data.reshape(-1).tobytes()[: params.m]
