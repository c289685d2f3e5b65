"""Region-of-interest description, RONI strip partition and capacity."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import SpecOutOfBounds
from .prng import keyed_shuffle, splitmix64

BLOCK_SIZE = 6
BLOCK_ORDER_TAG = 0xB10C

Rect = tuple[int, int, int, int]  # (x, y, w, h): column, row, width, height


@dataclass(frozen=True)
class RoiSpec:
    """ROI as a rectangle, an ellipse inscribed in a rectangle, or a mask.

    Mask pixels greater than zero belong to the ROI.
    """
    kind: str
    rect: Rect | None = None
    mask: np.ndarray | None = field(default=None, compare=False, repr=False)

    @classmethod
    def from_rect(cls, x, y, w, h):
        return cls("rect", (int(x), int(y), int(w), int(h)))

    @classmethod
    def from_ellipse(cls, x, y, w, h):
        return cls("ellipse", (int(x), int(y), int(w), int(h)))

    @classmethod
    def from_mask(cls, mask):
        return cls("mask", None, np.asarray(mask))

    def validate(self, shape: tuple[int, int]) -> None:
        H, W = shape
        if self.kind in ("rect", "ellipse"):
            if self.rect is None:
                raise SpecOutOfBounds(f"{self.kind} ROI needs a rectangle")
            x, y, w, h = self.rect
            if w < 1 or h < 1 or x < 0 or y < 0 or x + w > W or y + h > H:
                raise SpecOutOfBounds(f"ROI {self.rect} does not fit a {W}x{H} image")
        elif self.kind == "mask":
            if self.mask is None or self.mask.shape != (H, W):
                got = None if self.mask is None else self.mask.shape
                raise SpecOutOfBounds(f"mask shape {got} differs from image shape {(H, W)}")
        else:
            raise SpecOutOfBounds(f"unknown ROI kind {self.kind!r}")

    def bounding_rect(self) -> Rect:
        """Smallest rectangle enclosing the ROI; (0, 0, 0, 0) for an empty mask."""
        if self.kind != "mask":
            return self.rect
        rows = np.flatnonzero(self.mask.any(axis=1))
        cols = np.flatnonzero(self.mask.any(axis=0))
        if rows.size == 0:
            return (0, 0, 0, 0)
        return (int(cols[0]), int(rows[0]),
                int(cols[-1] - cols[0] + 1), int(rows[-1] - rows[0] + 1))


def ellipse_mask(rect: Rect, shape: tuple[int, int]) -> np.ndarray:
    """Pixels whose centres lie strictly inside the ellipse inscribed in ``rect``."""
    x, y, w, h = rect
    rows = np.arange(shape[0])[:, None] + 0.5
    cols = np.arange(shape[1])[None, :] + 0.5
    a, b = w / 2.0, h / 2.0
    return ((cols - (x + a)) / a) ** 2 + ((rows - (y + b)) / b) ** 2 < 1.0


def roi_mask(spec: RoiSpec, shape: tuple[int, int]) -> np.ndarray:
    """Boolean membership array of the ROI."""
    spec.validate(shape)
    if spec.kind == "mask":
        return spec.mask > 0
    if spec.kind == "ellipse":
        return ellipse_mask(spec.rect, shape)
    out = np.zeros(shape, dtype=bool)
    x, y, w, h = spec.rect
    out[y:y + h, x:x + w] = True
    return out


def roi_pixel_set(spec: RoiSpec, shape: tuple[int, int]) -> tuple[np.ndarray, int]:
    """ROI membership predicate (as a boolean array) and its pixel count."""
    member = roi_mask(spec, shape)
    if spec.kind == "rect":
        return member, spec.rect[2] * spec.rect[3]
    return member, int(member.sum())


def embedding_capacity(shape: tuple[int, int], spec: RoiSpec) -> int:
    """Number of image pixels outside the ROI."""
    _, count = roi_pixel_set(spec, shape)
    return shape[0] * shape[1] - count


@dataclass(frozen=True)
class RoniPartition:
    """RONI as up to four rectangles around the ROI bounding rect.

    ``strips`` appear in the fixed order top, bottom, left, right; empty ones
    are dropped.  Strip pixels, taken strip by strip in row-major order, are
    grouped six at a time into blocks; the trailing ``pixels % 6`` carry none.
    """
    shape: tuple[int, int]
    roi_rect: Rect
    strips: tuple[Rect, ...]

    @property
    def roni_pixel_count(self) -> int:
        return sum(w * h for _, _, w, h in self.strips)

    @property
    def block_count(self) -> int:
        return self.roni_pixel_count // BLOCK_SIZE

    def pixel_index(self) -> np.ndarray:
        """Flat image indices of all strip pixels, in block order."""
        W = self.shape[1]
        parts = []
        for x, y, w, h in self.strips:
            rr, cc = np.mgrid[y:y + h, x:x + w]
            parts.append((rr * W + cc).ravel())
        if not parts:
            return np.zeros(0, dtype=np.int64)
        return np.concatenate(parts).astype(np.int64)

    def block_index(self) -> np.ndarray:
        """Flat image indices shaped ``(block_count, 6)``."""
        n = self.block_count * BLOCK_SIZE
        return self.pixel_index()[:n].reshape(-1, BLOCK_SIZE)

    def block_order(self, key1: int) -> np.ndarray:
        return keyed_shuffle(self.block_count, splitmix64(key1 ^ BLOCK_ORDER_TAG))


def roni_strips(spec: RoiSpec, shape: tuple[int, int]) -> RoniPartition:
    """Split the image outside the ROI bounding rect into rectangular strips."""
    spec.validate(shape)
    H, W = shape
    x, y, w, h = spec.bounding_rect()
    candidates = [
        (0, 0, W, y),                    # top
        (0, y + h, W, H - y - h),        # bottom
        (0, y, x, h),                    # left
        (x + w, y, W - x - w, h),        # right
    ]
    if w == 0 or h == 0:
        candidates = [(0, 0, W, H)]
    strips = tuple(s for s in candidates if s[2] > 0 and s[3] > 0)
    return RoniPartition(shape=(H, W), roi_rect=(x, y, w, h), strips=strips)
