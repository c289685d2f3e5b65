"""Run-length coding of a bit plane into 6-bit packages.

A package holds the run value in its top bit and the run length (1..31) in
the low five bits, so one package fills exactly one 6x1 RONI block.
"""
from __future__ import annotations

import numpy as np

from .errors import ZeroLengthPackage

MAX_RUN = 31


def rle6_encode(bits) -> list[int]:
    bits = np.asarray(bits, dtype=np.uint8).ravel()
    if bits.size == 0:
        return []
    edges = np.flatnonzero(np.diff(bits)) + 1
    starts = np.concatenate(([0], edges))
    lengths = np.diff(np.concatenate((starts, [bits.size])))
    packages = []
    for start, length in zip(starts.tolist(), lengths.tolist()):
        value = int(bits[start]) << 5
        while length > MAX_RUN:
            packages.append(value | MAX_RUN)
            length -= MAX_RUN
        packages.append(value | length)
    return packages


def rle6_decode(packages) -> np.ndarray:
    pk = np.asarray(list(packages), dtype=np.int64)
    if pk.size == 0:
        return np.zeros(0, dtype=np.uint8)
    if pk.min() < 0 or pk.max() > 63:
        raise ValueError("packages are 6-bit values")
    lengths = pk & MAX_RUN
    if (lengths == 0).any():
        raise ZeroLengthPackage(f"zero-length run at package {int(np.argmin(lengths))}")
    return np.repeat((pk >> 5).astype(np.uint8), lengths)
