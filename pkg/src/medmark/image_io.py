"""PGM (netpbm P2/P5, maxval 255) reading and writing.

Images are plain 2-D ``numpy.uint8`` arrays of shape ``(height, width)``.
"""
from __future__ import annotations

import os

import numpy as np

from .errors import (PgmBadMagic, PgmBadMaxval, PgmError, PgmMalformedHeader,
                     PgmTruncated)

_WHITESPACE = b" \t\n\r\v\f"


def as_gray(img) -> np.ndarray:
    """Validate ``img`` as an 8-bit grayscale raster and return it as uint8."""
    arr = np.asarray(img)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"expected a non-empty 2-D image, got shape {arr.shape}")
    if arr.dtype == np.uint8:
        return arr
    if not np.issubdtype(arr.dtype, np.integer):
        raise TypeError(f"expected integer pixels, got {arr.dtype}")
    if arr.min() < 0 or arr.max() > 255:
        raise ValueError("pixel values must lie in [0, 255]")
    return arr.astype(np.uint8)


def _header_tokens(data: bytes, count: int) -> tuple[list[bytes], int]:
    """Read ``count`` whitespace-separated header tokens, skipping comments.

    Returns the tokens and the offset just past the last token.
    """
    tokens = []
    pos = 0
    n = len(data)
    while len(tokens) < count:
        while pos < n and data[pos] in _WHITESPACE:
            pos += 1
        if pos >= n:
            raise PgmMalformedHeader("header ended early")
        if data[pos] == ord("#"):
            while pos < n and data[pos] not in b"\n\r":
                pos += 1
            continue
        start = pos
        while pos < n and data[pos] not in _WHITESPACE and data[pos] != ord("#"):
            pos += 1
        tokens.append(data[start:pos])
    return tokens, pos


def _header_int(tok: bytes, what: str) -> int:
    if not tok.isdigit():
        raise PgmMalformedHeader(f"{what} is not a decimal integer: {tok!r}")
    return int(tok)


def read_pgm(data: bytes) -> np.ndarray:
    """Parse a P2 or P5 PGM byte stream with maxval 255."""
    data = bytes(data)
    if len(data) < 2 or data[:2] not in (b"P2", b"P5"):
        raise PgmBadMagic(f"not a grayscale PGM stream (magic {data[:2]!r})")
    magic = data[:2]
    if len(data) > 2 and data[2] not in _WHITESPACE and data[2] != ord("#"):
        raise PgmBadMagic(f"not a grayscale PGM stream (magic {data[:3]!r})")
    (w_tok, h_tok, max_tok), pos = _header_tokens(data[2:], 3)
    pos += 2
    width = _header_int(w_tok, "width")
    height = _header_int(h_tok, "height")
    maxval = _header_int(max_tok, "maxval")
    if width < 1 or height < 1:
        raise PgmMalformedHeader(f"bad dimensions {width}x{height}")
    if maxval != 255:
        raise PgmBadMaxval(f"maxval must be 255, got {maxval}")
    npix = width * height

    if magic == b"P5":
        if pos >= len(data) or data[pos] not in _WHITESPACE:
            raise PgmTruncated("missing whitespace byte after maxval")
        raster = data[pos + 1:pos + 1 + npix]
        if len(raster) < npix:
            raise PgmTruncated(f"expected {npix} samples, found {len(raster)}")
        pixels = np.frombuffer(raster, dtype=np.uint8).copy()
    else:
        # comments are only legal in the header, so the body is plain integers
        fields = data[pos:].split()
        if len(fields) < npix:
            raise PgmTruncated(f"expected {npix} samples, found {len(fields)}")
        values = []
        for tok in fields[:npix]:
            if not tok.isdigit():
                raise PgmError(f"non-numeric sample {tok!r}")
            v = int(tok)
            if v > 255:
                raise PgmError(f"sample {v} exceeds maxval")
            values.append(v)
        pixels = np.array(values, dtype=np.uint8)
    return pixels.reshape(height, width)


def write_pgm(img, ascii: bool = False) -> bytes:
    """Serialize ``img`` as P2 (``ascii=True``) or P5."""
    img = as_gray(img)
    h, w = img.shape
    if ascii:
        rows = [" ".join(str(int(v)) for v in row) for row in img]
        return f"P2\n{w} {h}\n255\n".encode() + ("\n".join(rows) + "\n").encode()
    return f"P5\n{w} {h}\n255\n".encode() + np.ascontiguousarray(img).tobytes()


def load_pgm(path: str | os.PathLike) -> np.ndarray:
    with open(path, "rb") as fh:
        return read_pgm(fh.read())


def save_pgm(path: str | os.PathLike, img, ascii: bool = False) -> None:
    with open(path, "wb") as fh:
        fh.write(write_pgm(img, ascii=ascii))
