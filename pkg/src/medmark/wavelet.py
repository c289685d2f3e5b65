"""One-level 2-D integer Haar transform (S-transform lifting) and its inverse.

For a pixel pair ``(x0, x1)`` the forward step is ``d = x1 - x0``,
``s = x0 + floor(d / 2)``; the inverse is ``x0 = s - floor(d / 2)``,
``x1 = x0 + d``.  Rows are lifted first, then columns, and the quadrants are
LL (top-left), HL (top-right), LH (bottom-left) and HH (bottom-right).
Floor division rounds toward negative infinity, which is what numpy's ``>>``
on signed integers does.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatch, OddDimension

BAND_NAMES = ("LL", "HL", "LH", "HH")


class SubBands(NamedTuple):
    ll: np.ndarray
    hl: np.ndarray
    lh: np.ndarray
    hh: np.ndarray

    @property
    def origin_shape(self) -> tuple[int, int]:
        return (2 * self.ll.shape[0], 2 * self.ll.shape[1])


def _lift(x0, x1):
    d = x1 - x0
    return x0 + (d >> 1), d


def _unlift(s, d):
    x0 = s - (d >> 1)
    return x0, x0 + d


def fwd_haar(region) -> SubBands:
    a = np.asarray(region, dtype=np.int64)
    if a.ndim != 2:
        raise DimensionMismatch(f"expected a 2-D region, got {a.ndim}-D")
    h, w = a.shape
    if h % 2 or w % 2:
        raise OddDimension(f"region {h}x{w} must have even dimensions")
    lo, hi = _lift(a[:, 0::2], a[:, 1::2])
    ll, lh = _lift(lo[0::2], lo[1::2])
    hl, hh = _lift(hi[0::2], hi[1::2])
    return SubBands(ll, hl, lh, hh)


def inv_haar(bands: SubBands) -> np.ndarray:
    ll, hl, lh, hh = (np.asarray(b, dtype=np.int64) for b in bands)
    if not ll.shape == hl.shape == lh.shape == hh.shape or ll.ndim != 2:
        raise DimensionMismatch("sub-bands must share one 2-D shape")
    h2, w2 = ll.shape
    lo = np.empty((2 * h2, w2), dtype=np.int64)
    hi = np.empty((2 * h2, w2), dtype=np.int64)
    lo[0::2], lo[1::2] = _unlift(ll, lh)
    hi[0::2], hi[1::2] = _unlift(hl, hh)
    out = np.empty((2 * h2, 2 * w2), dtype=np.int64)
    out[:, 0::2], out[:, 1::2] = _unlift(lo, hi)
    return out
