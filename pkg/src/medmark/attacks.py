"""Seeded attack simulations for robustness evaluation."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DuplicateIndex, IndexOutOfRange
from .image_io import as_gray
from .prng import keyed_shuffle, prng_stream, splitmix64

_TWO64 = float(1 << 64)


def salt_pepper(img, density: float, seed: int) -> np.ndarray:
    """Raster-order noise: a pixel is hit when ``u < density``, ``u = next / 2**64``.

    A hit pixel draws one more output; its top bit picks white (1) or black (0).
    """
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must lie in [0, 1]")
    img = as_gray(img)
    out = img.ravel().copy()
    if density == 0.0:
        return out.reshape(img.shape)
    # draws are sequential and data dependent, so walk the stream explicitly
    n = out.size
    words = iter(prng_stream(seed, 2 * n))
    threshold = density * _TWO64
    for i in range(n):
        if next(words) < threshold:
            out[i] = 255 if next(words) >> 63 else 0
    return out.reshape(img.shape)


def shuffle_blocks(img, block: int, seed: int) -> np.ndarray:
    """Permute whole ``block x block`` tiles; partial edge tiles stay put.

    Output tile ``i`` (raster order over full tiles) is input tile ``perm[i]``
    with ``perm = keyed_shuffle(n_tiles, splitmix64(seed))``.
    """
    if block < 1:
        raise ValueError("block must be >= 1")
    img = as_gray(img)
    H, W = img.shape
    by, bx = H // block, W // block
    out = img.copy()
    if by * bx <= 1:
        return out
    tiles = (img[:by * block, :bx * block]
             .reshape(by, block, bx, block).swapaxes(1, 2).reshape(by * bx, block, block))
    perm = keyed_shuffle(by * bx, splitmix64(seed))
    moved = tiles[perm].reshape(by, bx, block, block).swapaxes(1, 2)
    out[:by * block, :bx * block] = moved.reshape(by * block, bx * block)
    return out


def drop_rows_cols(img, rows=(), cols=()) -> np.ndarray:
    img = as_gray(img)
    H, W = img.shape
    for name, idx, limit in (("row", rows, H), ("column", cols, W)):
        idx = list(idx)
        if len(set(idx)) != len(idx):
            raise DuplicateIndex(f"duplicate {name} index")
        if any(i < 0 or i >= limit for i in idx):
            raise IndexOutOfRange(f"{name} index outside [0, {limit})")
    keep_r = np.setdiff1d(np.arange(H), rows)
    keep_c = np.setdiff1d(np.arange(W), cols)
    return img[keep_r[:, None], keep_c[None, :]]


def requantize(img, step: int) -> np.ndarray:
    """``min(255, round_half_up(p / step) * step)`` per pixel."""
    if not 1 <= step <= 128:
        raise ValueError("step must lie in [1, 128]")
    p = as_gray(img).astype(np.int64)
    q = (2 * p + step) // (2 * step) * step
    return np.minimum(q, 255).astype(np.uint8)


@dataclass(frozen=True)
class AttackSpec:
    kind: str  # saltpepper | shuffle | drop | requant
    density: float = 0.0
    block: int = 8
    rows: tuple[int, ...] = field(default=())
    cols: tuple[int, ...] = field(default=())
    step: int = 1
    seed: int = 0

    def apply(self, img) -> np.ndarray:
        if self.kind == "saltpepper":
            return salt_pepper(img, self.density, self.seed)
        if self.kind == "shuffle":
            return shuffle_blocks(img, self.block, self.seed)
        if self.kind == "drop":
            return drop_rows_cols(img, self.rows, self.cols)
        if self.kind == "requant":
            return requantize(img, self.step)
        raise ValueError(f"unknown attack {self.kind!r}")
