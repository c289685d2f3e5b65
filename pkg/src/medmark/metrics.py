"""Fidelity metrics: MSE, PSNR and whole-image SSIM."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, TooSmall

MAX_PIXEL = 255


@dataclass(frozen=True)
class SsimParams:
    k1: float = 0.01
    k2: float = 0.03
    dynamic_range: int = 255

    @property
    def c1(self) -> float:
        return (self.k1 * self.dynamic_range) ** 2

    @property
    def c2(self) -> float:
        return (self.k2 * self.dynamic_range) ** 2


@dataclass(frozen=True)
class MetricsReport:
    mse: float
    psnr_db: float  # math.inf when the images are identical
    ssim: float

    def to_dict(self) -> dict:
        return {"mse": self.mse, "psnr_db": _json_float(self.psnr_db), "ssim": self.ssim}


def _json_float(x: float):
    return "inf" if math.isinf(x) else x


def _pair(a, b) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes differ: {a.shape} vs {b.shape}")
    return a, b


def mse_psnr(a, b) -> tuple[float, float]:
    """Mean squared error and PSNR in dB (``math.inf`` if ``mse == 0``)."""
    a, b = _pair(a, b)
    mse = float(np.mean((a - b) ** 2))
    if mse == 0:
        return 0.0, math.inf
    return mse, 10.0 * math.log10(MAX_PIXEL ** 2 / mse)


def ssim_global(a, b, params: SsimParams = SsimParams()) -> float:
    """SSIM evaluated once over all pixels with population statistics."""
    a, b = _pair(a, b)
    if a.size < 2:
        raise TooSmall("SSIM needs at least two pixels")
    mx, my = a.mean(), b.mean()
    vx = np.mean((a - mx) ** 2)
    vy = np.mean((b - my) ** 2)
    cxy = np.mean((a - mx) * (b - my))
    c1, c2 = params.c1, params.c2
    num = (2 * mx * my + c1) * (2 * cxy + c2)
    den = (mx * mx + my * my + c1) * (vx + vy + c2)
    return float(num / den)


def compare(a, b, params: SsimParams = SsimParams()) -> MetricsReport:
    mse, psnr = mse_psnr(a, b)
    return MetricsReport(mse=mse, psnr_db=psnr, ssim=ssim_global(a, b, params))
