"""Synthetic head-CT-like phantoms, logos and patient records for tests and demos.

The background is a gentle ramp well away from 0 and 255, so the RONI has
long LSB runs (small run-length record) and no robust slot is lost to range
limits.  Anatomy (skull ring, brain, ventricles, a lesion) sits in the centre.
"""
from __future__ import annotations

import numpy as np


def head_phantom(seed: int, shape: tuple[int, int] = (256, 256)) -> np.ndarray:
    rng = np.random.default_rng(seed)
    H, W = shape
    rr, cc = np.mgrid[0:H, 0:W].astype(np.float64)

    base = rng.uniform(36, 60)
    gx, gy = rng.uniform(-6, 6, size=2)
    img = base + gx * cc / W + gy * rr / H

    cy = H / 2 + rng.uniform(-6, 6)
    cx = W / 2 + rng.uniform(-6, 6)
    ry = H * rng.uniform(0.29, 0.34)
    rx = W * rng.uniform(0.25, 0.31)
    r = np.sqrt(((rr - cy) / ry) ** 2 + ((cc - cx) / rx) ** 2)

    skull = rng.uniform(200, 230)
    brain = rng.uniform(105, 135) + 12 * np.cos(2.5 * r) + 6 * (rr - cy) / ry
    img = np.where(r < 1.0, skull, img)
    img = np.where(r < 0.92, brain, img)

    for side in (-1, 1):
        vr = np.sqrt(((rr - cy + 0.05 * ry) / (0.28 * ry)) ** 2
                     + ((cc - cx - side * 0.18 * rx) / (0.09 * rx)) ** 2)
        img = np.where(vr < 1.0, rng.uniform(60, 80), img)

    ly = cy + rng.uniform(-0.4, 0.4) * ry
    lx = cx + rng.uniform(-0.4, 0.4) * rx
    lr = rng.uniform(4, 10)
    lesion = np.exp(-(((rr - ly) ** 2 + (cc - lx) ** 2) / (2 * lr ** 2)))
    img = img + 40 * lesion * (r < 0.9)
    return np.clip(np.rint(img), 0, 255).astype(np.uint8)


def random_logo(seed: int, size: int = 32) -> np.ndarray:
    """A blocky binary-ish 8-bit logo."""
    rng = np.random.default_rng(seed)
    cells = rng.integers(0, 2, size=(size // 4, size // 4)) * 255
    return np.kron(cells, np.ones((4, 4), dtype=np.int64)).astype(np.uint8)


def cross_logo(size: int = 32) -> np.ndarray:
    """A hospital-style cross on a dark field."""
    img = np.zeros((size, size), dtype=np.uint8)
    a, b = size // 3, 2 * size // 3
    img[a:b, 2:size - 2] = 255
    img[2:size - 2, a:b] = 255
    return img


_FIELDS = ("Patient", "Physician", "Age", "Address", "Submitted", "Diagnosis")


def patient_record(seed: int, length: int = 512) -> bytes:
    """Printable ASCII record of exactly ``length`` bytes."""
    rng = np.random.default_rng(seed)
    parts = []
    for name in _FIELDS:
        value = "".join(chr(c) for c in rng.integers(65, 91, size=12))
        parts.append(f"{name}: {value}")
    text = "; ".join(parts) + "; Notes: "
    while len(text) < length:
        text += "".join(chr(c) for c in rng.integers(32, 127, size=32))
    return text[:length].encode("ascii")
