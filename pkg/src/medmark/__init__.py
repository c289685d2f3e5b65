"""Reversible ROI-preserving watermarking of 8-bit grayscale medical images."""

from .attacks import (AttackSpec, drop_rows_cols, requantize, salt_pepper,
                      shuffle_blocks)
from .engine import (EmbedParams, EmbedReport, ExtractResult, Verdict,
                     damage_percent, embed, extract, extract_logo,
                     majority_vote, restore, verify)
from .errors import *  # noqa: F401,F403
from .image_io import load_pgm, read_pgm, save_pgm, write_pgm
from .metrics import MetricsReport, SsimParams, compare, mse_psnr, ssim_global
from .roi import RoiSpec, embedding_capacity, roi_pixel_set, roni_strips
from .wavelet import SubBands, fwd_haar, inv_haar

__version__ = "0.1.0"
