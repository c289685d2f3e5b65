"""Deterministic key expansion: splitmix64, xorshift64*, Fisher-Yates, keystream.

Every keyed choice in the toolkit (embedding positions, block order, payload
encryption, attack noise) is drawn from these generators so results are
reproducible bit for bit on any platform.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import ZeroState

MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_STAR = 0x2545F4914F6CDD1D


def splitmix64(x: int) -> int:
    z = (x + _GOLDEN) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def seed_state(key: int) -> int:
    """Nonzero xorshift state derived from an arbitrary 64-bit key."""
    key &= MASK64
    s = splitmix64(key)
    if s == 0:
        s = splitmix64((key + 1) & MASK64)
    return s


def prng_next(state: int) -> tuple[int, int]:
    """One xorshift64* step: returns ``(output, new_state)``."""
    if state == 0:
        raise ZeroState("xorshift64* state must be nonzero")
    s = state
    s ^= s >> 12
    s ^= (s << 25) & MASK64
    s ^= s >> 27
    return (s * _STAR) & MASK64, s


def prng_stream(seed: int, count: int) -> list[int]:
    """The first ``count`` outputs of the generator seeded from ``seed``."""
    s = seed_state(seed)
    out = []
    append = out.append
    for _ in range(count):
        s ^= s >> 12
        s ^= (s << 25) & MASK64
        s ^= s >> 27
        append((s * _STAR) & MASK64)
    return out


@lru_cache(maxsize=64)
def _shuffle_cached(n: int, seed: int) -> np.ndarray:
    perm = list(range(n))
    s = seed_state(seed)
    for i in range(n - 1, 0, -1):
        s ^= s >> 12
        s ^= (s << 25) & MASK64
        s ^= s >> 27
        j = ((s * _STAR) & MASK64) % (i + 1)
        perm[i], perm[j] = perm[j], perm[i]
    arr = np.array(perm, dtype=np.int64)
    arr.flags.writeable = False
    return arr


def keyed_shuffle(n: int, seed: int) -> np.ndarray:
    """Fisher-Yates permutation of ``range(n)`` driven by ``seed``.

    The returned array is read-only; results are memoised per ``(n, seed)``.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    return _shuffle_cached(int(n), int(seed) & MASK64)


def keystream(key: int, nbytes: int) -> bytes:
    """``nbytes`` of keystream, each output word serialised LSB first."""
    words = prng_stream(key, (nbytes + 7) // 8)
    return b"".join(w.to_bytes(8, "little") for w in words)[:nbytes]


def keystream_xor(data: bytes, key2: int) -> bytes:
    """XOR ``data`` with the keystream of ``key2``; applying it twice is a no-op."""
    data = bytes(data)
    if not data:
        return b""
    ks = np.frombuffer(keystream(key2, len(data)), dtype=np.uint8)
    return (np.frombuffer(data, dtype=np.uint8) ^ ks).tobytes()
