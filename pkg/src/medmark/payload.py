"""Watermark payload: logo and text bitisation, ROI hash, wire format.

Wire layout (all integers big-endian)::

    magic 'MW' | version u8 | flags u8 | logo_w u16 | logo_h u16 |
    text_len u16 | delta u16 | roi x,y,w,h u16 x4 | roi_hash u64 |
    logo bits (MSB first, zero padded) | text bits (MSB first)
"""
from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from .errors import BadMagic, BadVersion, LengthMismatch, NonAscii, TextTooLong
from .image_io import as_gray

MAGIC = b"MW"
VERSION = 1
FLAG_REVERSIBLE = 0x01

LOGO_SIZE = 32
LOGO_THRESHOLD = 127
TEXT_FIELD_LEN = 512

_HEADER = struct.Struct(">2sBBHHHH4HQ")
HEADER_SIZE = _HEADER.size  # 28

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK64 = (1 << 64) - 1


# -- bit helpers ------------------------------------------------------------

def bytes_to_bits(data: bytes) -> np.ndarray:
    return np.unpackbits(np.frombuffer(bytes(data), dtype=np.uint8))


def bits_to_bytes(bits) -> bytes:
    """Pack bits MSB first, zero padding the final byte."""
    return np.packbits(np.asarray(bits, dtype=np.uint8)).tobytes()


def int_to_bits(value: int, width: int) -> np.ndarray:
    return np.array([(value >> (width - 1 - i)) & 1 for i in range(width)], dtype=np.uint8)


def bits_to_int(bits) -> int:
    v = 0
    for b in np.asarray(bits).tolist():
        v = (v << 1) | int(b)
    return v


# -- watermark generation ---------------------------------------------------

def resize_nearest(img: np.ndarray, size: tuple[int, int]) -> np.ndarray:
    h, w = img.shape
    rows = (np.arange(size[0]) * h) // size[0]
    cols = (np.arange(size[1]) * w) // size[1]
    return img[rows[:, None], cols[None, :]]


def binarize_logo(logo, threshold: int = LOGO_THRESHOLD) -> np.ndarray:
    """Resize to 32x32 (nearest neighbour), then 1 where pixel > threshold."""
    logo = as_gray(logo)
    small = resize_nearest(logo, (LOGO_SIZE, LOGO_SIZE))
    return (small > threshold).astype(np.uint8).ravel()


def text_to_bits(text: bytes, field_len: int = TEXT_FIELD_LEN) -> np.ndarray:
    """ASCII text, NUL padded to ``field_len`` bytes, as MSB-first bits."""
    if isinstance(text, str):
        text = text.encode("utf-8")
    text = bytes(text)
    if len(text) > field_len:
        raise TextTooLong(f"text is {len(text)} bytes, field holds {field_len}")
    if any(b > 127 for b in text):
        raise NonAscii("text must be 7-bit ASCII")
    return bytes_to_bits(text.ljust(field_len, b"\0"))


def fnv1a64(data: bytes) -> int:
    h = _FNV_OFFSET
    for b in bytes(data):
        h = ((h ^ b) * _FNV_PRIME) & _MASK64
    return h


# -- wire format ------------------------------------------------------------

@dataclass(eq=False)
class Payload:
    flags: int
    logo_w: int
    logo_h: int
    text_len: int
    delta: int
    roi_rect: tuple[int, int, int, int]
    roi_hash: int
    w1: np.ndarray
    w2: np.ndarray
    magic: bytes = MAGIC
    version: int = VERSION

    @property
    def reversible(self) -> bool:
        return bool(self.flags & FLAG_REVERSIBLE)

    @property
    def text(self) -> bytes:
        """The text field with its NUL padding removed."""
        return bits_to_bytes(self.w2).rstrip(b"\0")

    def __eq__(self, other):
        if not isinstance(other, Payload):
            return NotImplemented
        return (self.magic == other.magic and self.version == other.version
                and self.flags == other.flags and self.logo_w == other.logo_w
                and self.logo_h == other.logo_h and self.text_len == other.text_len
                and self.delta == other.delta
                and tuple(self.roi_rect) == tuple(other.roi_rect)
                and self.roi_hash == other.roi_hash
                and np.array_equal(self.w1, other.w1)
                and np.array_equal(self.w2, other.w2))


def payload_size(logo_w: int, logo_h: int, text_len: int) -> int:
    return HEADER_SIZE + (logo_w * logo_h + 7) // 8 + text_len


def build_payload(w1, w2, roi_rect, roi_hash: int, delta: int, flags: int,
                  logo_size: tuple[int, int] = (LOGO_SIZE, LOGO_SIZE)) -> bytes:
    w1 = np.asarray(w1, dtype=np.uint8).ravel()
    w2 = np.asarray(w2, dtype=np.uint8).ravel()
    logo_w, logo_h = logo_size
    if w1.size != logo_w * logo_h:
        raise LengthMismatch(f"logo has {w1.size} bits, expected {logo_w * logo_h}")
    if w2.size % 8:
        raise LengthMismatch("text bits must fill whole bytes")
    header = _HEADER.pack(MAGIC, VERSION, flags, logo_w, logo_h, w2.size // 8,
                          delta, *roi_rect, roi_hash)
    return header + bits_to_bytes(w1) + bits_to_bytes(w2)


def parse_header(data: bytes) -> tuple:
    """Validate magic and version; return the unpacked header fields."""
    data = bytes(data)
    if data[:2] != MAGIC:
        raise BadMagic("payload magic mismatch")
    if len(data) < HEADER_SIZE:
        raise LengthMismatch(f"payload header needs {HEADER_SIZE} bytes, got {len(data)}")
    fields = _HEADER.unpack_from(data)
    if fields[1] != VERSION:
        raise BadVersion(f"unsupported payload version {fields[1]}")
    return fields


def parse_payload(data: bytes) -> Payload:
    data = bytes(data)
    (_, version, flags, logo_w, logo_h, text_len, delta,
     x, y, w, h, roi_hash) = parse_header(data)
    expected = payload_size(logo_w, logo_h, text_len)
    if len(data) != expected:
        raise LengthMismatch(f"payload is {len(data)} bytes, header implies {expected}")
    nlogo = logo_w * logo_h
    logo_bytes = (nlogo + 7) // 8
    w1 = bytes_to_bits(data[HEADER_SIZE:HEADER_SIZE + logo_bytes])[:nlogo]
    w2 = bytes_to_bits(data[HEADER_SIZE + logo_bytes:])
    return Payload(flags=flags, logo_w=logo_w, logo_h=logo_h, text_len=text_len,
                   delta=delta, roi_rect=(x, y, w, h), roi_hash=roi_hash,
                   w1=w1, w2=w2, version=version)
