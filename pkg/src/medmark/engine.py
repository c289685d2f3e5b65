"""Two-tier reversible watermarking of the RONI.

Robust tier
    Each RONI strip (cropped to even size) is Haar transformed.  The four
    sub-bands, concatenated across strips, form four channels that share one
    location index.  A keyed permutation of the locations picks 1024 slots
    per channel and coefficient ``c`` becomes ``c + (2b - 1) * delta`` for
    logo bit ``b``.  A location is eligible only if every combination of
    ``-delta, 0, +delta`` over its four coefficients inverts to pixels in
    [0, 255]; ineligible locations are passed over.

    Every inverse-transform pixel is monotone in each coefficient, so range
    checks over a box of offsets only need its 16 corners.  That also lets
    restore prove a location eligible from the watermarked coefficients alone
    (all ``+-2 delta`` corners in range).  Locations it cannot decide get one
    stored flag bit each, in the order restore will meet them.

Fragile tier
    The LSB plane of all block pixels is run-length coded and written, along
    with the encrypted payload, into the LSBs of keyed-ordered 6x1 blocks::

        u32 package count | packages (6 bits each) |
        keystream_xor(payload, key2) | u32 flag count | eligibility flags

Restoration undoes the fragile tier from the stored LSB record, then
subtracts the robust modulation.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import (BadMagic, CapacityExceeded, DimensionMismatch,
                     LengthMismatch, NotReversible, PayloadCorrupt,
                     RobustCapacityExceeded, RoiMismatch)
from .image_io import as_gray
from .metrics import compare
from .payload import (FLAG_REVERSIBLE, HEADER_SIZE, Payload, binarize_logo,
                      bits_to_bytes, bits_to_int, build_payload, bytes_to_bits,
                      fnv1a64, int_to_bits, parse_header, parse_payload,
                      payload_size, text_to_bits)
from .prng import MASK64, keyed_shuffle, keystream_xor, splitmix64
from .rle import MAX_RUN, rle6_decode, rle6_encode
from .roi import BLOCK_SIZE, RoiSpec, RoniPartition, roni_strips
from .wavelet import SubBands, fwd_haar, inv_haar

LOGO_BITS = 1024
N_CHANNELS = 4
COUNT_BITS = 32

# corners of the per-location offset box; pixels are monotone in each coefficient
_CORNERS = np.array(list(itertools.product((-1, 1), repeat=N_CHANNELS)), dtype=np.int64)


@dataclass(frozen=True)
class EmbedParams:
    key1: int
    key2: int
    roi: RoiSpec
    delta: int = 8
    reversible: bool = True

    def __post_init__(self):
        for name in ("key1", "key2"):
            k = getattr(self, name)
            if not 0 <= k <= MASK64:
                raise ValueError(f"{name} must be an unsigned 64-bit integer")
        if not 1 <= self.delta <= 0xFFFF:
            raise ValueError("delta must lie in [1, 65535]")


@dataclass
class EmbedReport:
    roni_pixels: int
    fragile_bits_used: int
    fragile_capacity_bits: int
    robust_slots_used: list[int]
    psnr_db: float
    ssim: float
    roi_hash: int
    band_max: list[int] = field(default_factory=list)
    skipped_locations: int = 0
    eligibility_flags: int = 0

    def to_dict(self) -> dict:
        d = asdict(self)
        if d["psnr_db"] == float("inf"):
            d["psnr_db"] = "inf"
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


@dataclass(eq=False)
class ExtractResult:
    payload: Payload
    logo_robust: np.ndarray
    logo_fragile: np.ndarray
    text: bytes
    damage_percent: float
    authentic: bool
    channel_bits: np.ndarray  # (4, 1024) per-band copies before voting


@dataclass(frozen=True)
class Verdict:
    authentic: bool
    reason: str | None = None  # "RoiHashMismatch" or "PayloadCorrupt"

    def __str__(self):
        return "Authentic" if self.authentic else f"Tampered: {self.reason}"


# -- helpers ----------------------------------------------------------------

class _Layout:
    """Strip geometry of one (image shape, ROI) pair."""

    def __init__(self, shape, roi: RoiSpec):
        self.partition: RoniPartition = roni_strips(roi, shape)
        self.crops = [(x, y, w - w % 2, h - h % 2)
                      for x, y, w, h in self.partition.strips if w >= 2 and h >= 2]
        self.band_shapes = [(h // 2, w // 2) for _, _, w, h in self.crops]
        self.channel_len = sum(a * b for a, b in self.band_shapes)
        self.blocks = self.partition.block_index()

    def channels(self, img) -> list[np.ndarray]:
        bands = [fwd_haar(img[y:y + h, x:x + w]) for x, y, w, h in self.crops]
        if not bands:
            return [np.zeros(0, dtype=np.int64) for _ in range(N_CHANNELS)]
        return [np.concatenate([b[c].ravel() for b in bands]) for c in range(N_CHANNELS)]

    def synthesize(self, img, channels) -> np.ndarray:
        out = img.astype(np.int64)
        start = 0
        for (x, y, w, h), shp in zip(self.crops, self.band_shapes):
            n = shp[0] * shp[1]
            sb = SubBands(*(ch[start:start + n].reshape(shp) for ch in channels))
            out[y:y + h, x:x + w] = inv_haar(sb)
            start += n
        if out.min() < 0 or out.max() > 255:
            raise PayloadCorrupt("DWT coefficients invert outside the pixel range")
        return out.astype(np.uint8)

    def roi_hash(self, img) -> int:
        x, y, w, h = self.partition.roi_rect
        return fnv1a64(np.ascontiguousarray(img[y:y + h, x:x + w]).tobytes())


def _range_ok(channels, reach: int) -> np.ndarray:
    """Locations whose pixels stay in [0, 255] for every offset in ``[-reach, reach]^4``."""
    L = channels[0].size
    if L == 0:
        return np.zeros(0, dtype=bool)
    trial = SubBands(*(channels[c][None, :] + _CORNERS[:, c, None] * reach
                       for c in range(N_CHANNELS)))
    pix = inv_haar(trial)
    ok = ((pix >= 0) & (pix <= 255)).all(axis=0)
    return ok.reshape(L, 2).all(axis=1)


def eligible_locations(channels, delta: int) -> np.ndarray:
    """Locations whose pixels stay in range under any robust modulation."""
    return _range_ok(channels, delta)


def surely_eligible(marked_channels, delta: int) -> np.ndarray:
    """Locations provably eligible given only the watermarked coefficients."""
    return _range_ok(marked_channels, 2 * delta)


def _channel_order(L: int, key1: int, band_id: int) -> np.ndarray:
    return keyed_shuffle(L, splitmix64(key1 ^ band_id))


def select_positions(eligible: np.ndarray, key1: int, nbits: int = LOGO_BITS):
    """First ``nbits`` eligible locations of each channel's keyed permutation.

    Returns the per-channel position arrays and the sorted ineligible
    locations passed over on the way.
    """
    L = eligible.size
    positions, skipped = [], []
    for band_id in range(N_CHANNELS):
        order = _channel_order(L, key1, band_id)
        ok = eligible[order]
        hits = np.flatnonzero(ok)
        if hits.size < nbits:
            raise RobustCapacityExceeded(
                f"channel {band_id} has {hits.size} eligible slots, needs {nbits}")
        last = hits[nbits - 1]
        positions.append(order[hits[:nbits]])
        skipped.append(order[:last + 1][~ok[:last + 1]])
    return positions, np.unique(np.concatenate(skipped)).astype(np.int64)


def walk_positions(sure: np.ndarray, key1: int, nbits: int, lookup):
    """Replay position selection when eligibility is known only for ``sure``.

    ``lookup(loc)`` is consulted once per undecided location, in walk order.
    """
    L = sure.size
    known: dict[int, bool] = {}
    positions = []
    for band_id in range(N_CHANNELS):
        order = _channel_order(L, key1, band_id)
        if nbits <= L and sure[order[:nbits]].all():
            positions.append(order[:nbits])
            continue
        chosen = []
        for loc in order.tolist():
            if sure[loc]:
                ok = True
            elif loc in known:
                ok = known[loc]
            else:
                ok = known[loc] = bool(lookup(loc))
            if ok:
                chosen.append(loc)
                if len(chosen) == nbits:
                    break
        else:
            raise RobustCapacityExceeded(f"channel {band_id} ran out of eligible slots")
        positions.append(np.array(chosen, dtype=np.int64))
    return positions


def majority_vote(channel_bits) -> np.ndarray:
    """Bitwise vote over four copies; a 2-2 tie takes the LL copy."""
    cb = np.asarray(channel_bits, dtype=np.uint8)
    total = cb.sum(axis=0)
    return np.where(total == 2, cb[0], total >= 3).astype(np.uint8)


def damage_percent(extracted, reference) -> float:
    a = np.asarray(extracted, dtype=np.uint8).ravel()
    b = np.asarray(reference, dtype=np.uint8).ravel()
    if a.size != b.size:
        raise LengthMismatch(f"bit vectors differ in length: {a.size} vs {b.size}")
    if a.size == 0:
        return 0.0
    return 100.0 * int(np.count_nonzero(a != b)) / a.size


def _packages_to_bits(packages) -> np.ndarray:
    if not packages:
        return np.zeros(0, dtype=np.uint8)
    return np.unpackbits(np.array(packages, dtype=np.uint8)).reshape(-1, 8)[:, 2:].ravel()


def _bits_to_packages(bits) -> list[int]:
    return (bits.reshape(-1, BLOCK_SIZE) @ (1 << np.arange(5, -1, -1))).tolist()


def _read_fragile(img, layout: _Layout, params: EmbedParams):
    """Decode the fragile stream: (payload, packages, eligibility flags)."""
    blocks = layout.blocks
    order = layout.partition.block_order(params.key1)
    bits = (img.ravel()[blocks[order]] & 1).ravel().astype(np.uint8)
    total = bits.size
    if total < COUNT_BITS:
        raise BadMagic("fragile tier too small to hold a stream")
    count = bits_to_int(bits[:COUNT_BITS])
    pos = COUNT_BITS + BLOCK_SIZE * count
    # an impossible package count means the stream was read with the wrong
    # key or overwritten, which is reported like a magic mismatch
    if pos + HEADER_SIZE * 8 > total:
        raise BadMagic("fragile stream framing inconsistent")
    packages = _bits_to_packages(bits[COUNT_BITS:pos])

    header = keystream_xor(bits_to_bytes(bits[pos:pos + HEADER_SIZE * 8]), params.key2)
    fields = parse_header(header)
    size = payload_size(fields[3], fields[4], fields[5])
    end = pos + 8 * size
    if end + COUNT_BITS > total:
        raise PayloadCorrupt("payload runs past the fragile tier")
    payload = parse_payload(keystream_xor(bits_to_bytes(bits[pos:end]), params.key2))

    nflags = bits_to_int(bits[end:end + COUNT_BITS])
    flags_end = end + COUNT_BITS + nflags
    if flags_end > total:
        raise PayloadCorrupt("eligibility flags run past the fragile tier")
    flags = bits[end + COUNT_BITS:flags_end]
    if tuple(payload.roi_rect) != tuple(layout.partition.roi_rect):
        raise RoiMismatch(f"payload ROI {payload.roi_rect} differs from "
                          f"{layout.partition.roi_rect}")
    return payload, packages, flags


# -- public operations ------------------------------------------------------

def embed(cover, logo, text, params: EmbedParams, metrics: bool = True):
    """Watermark ``cover``; returns ``(watermarked, EmbedReport)``."""
    cover = as_gray(cover)
    layout = _Layout(cover.shape, params.roi)
    w1 = binarize_logo(logo)
    w2 = text_to_bits(text)
    roi_rect = layout.partition.roi_rect
    roi_hash = layout.roi_hash(cover)
    flags = FLAG_REVERSIBLE if params.reversible else 0
    payload = build_payload(w1, w2, roi_rect, roi_hash, params.delta, flags)

    capacity = BLOCK_SIZE * layout.blocks.shape[0]
    floor_bits = 2 * COUNT_BITS + 8 * len(payload)
    if params.reversible:
        floor_bits += BLOCK_SIZE * -(-capacity // MAX_RUN)
    if floor_bits > capacity:
        raise CapacityExceeded(f"fragile tier needs at least {floor_bits} bits, "
                               f"RONI blocks hold {capacity}")

    # robust tier
    channels = layout.channels(cover)
    eligible = eligible_locations(channels, params.delta)
    positions, skipped = select_positions(eligible, params.key1)
    band_max = [int(ch.max()) for ch in channels]
    step = (2 * w1.astype(np.int64) - 1) * params.delta
    for ch, pos in zip(channels, positions):
        ch[pos] += step
    marked = layout.synthesize(cover, channels)

    flags = []
    sure = surely_eligible(channels, params.delta)
    replay = walk_positions(sure, params.key1, LOGO_BITS,
                            lambda loc: flags.append(int(eligible[loc])) or eligible[loc])
    if not all(np.array_equal(a, b) for a, b in zip(replay, positions)):
        raise AssertionError("eligibility replay diverged from selection")

    # fragile tier
    flat = marked.ravel().copy()
    blocks = layout.blocks
    packages = rle6_encode(flat[blocks.ravel()] & 1) if params.reversible else []
    stream = np.concatenate([
        int_to_bits(len(packages), COUNT_BITS),
        _packages_to_bits(packages),
        bytes_to_bits(keystream_xor(payload, params.key2)),
        int_to_bits(len(flags), COUNT_BITS),
        np.array(flags, dtype=np.uint8),
    ])
    if stream.size > capacity:
        raise CapacityExceeded(f"fragile stream of {stream.size} bits exceeds "
                               f"{capacity} bits of RONI blocks (LSB plane too noisy "
                               f"for run-length coding, or RONI too small)")
    used = -(-stream.size // BLOCK_SIZE)
    stream = np.concatenate([stream, np.zeros(used * BLOCK_SIZE - stream.size, np.uint8)])
    target = blocks[layout.partition.block_order(params.key1)[:used]]
    flat[target] = (flat[target] & 0xFE) | stream.reshape(used, BLOCK_SIZE)
    marked = flat.reshape(cover.shape)

    if metrics:
        m = compare(cover, marked)
        psnr, ssim = m.psnr_db, m.ssim
    else:
        psnr = ssim = float("nan")
    report = EmbedReport(
        roni_pixels=layout.partition.roni_pixel_count,
        fragile_bits_used=int(stream.size),
        fragile_capacity_bits=int(capacity),
        robust_slots_used=[int(p.size) for p in positions],
        psnr_db=psnr, ssim=ssim, roi_hash=roi_hash,
        band_max=band_max, skipped_locations=int(skipped.size),
        eligibility_flags=len(flags),
    )
    return marked, report


def extract_logo(watermarked, original, params: EmbedParams, delta: int | None = None):
    """Robust tier only: ``(voted_logo_bits, per_channel_bits)``.

    Needs no readable fragile tier, so it still works after attacks.
    """
    wm = as_gray(watermarked)
    orig = as_gray(original)
    if wm.shape != orig.shape:
        raise DimensionMismatch(f"watermarked {wm.shape} vs original {orig.shape}")
    layout = _Layout(orig.shape, params.roi)
    c_orig = layout.channels(orig)
    c_wm = layout.channels(wm)
    eligible = eligible_locations(c_orig, params.delta if delta is None else delta)
    positions, _ = select_positions(eligible, params.key1)
    channel_bits = np.stack([(cw[p] - co[p] > 0) for cw, co, p
                             in zip(c_wm, c_orig, positions)]).astype(np.uint8)
    return majority_vote(channel_bits), channel_bits


def extract(watermarked, original, params: EmbedParams) -> ExtractResult:
    """Non-blind extraction of both tiers."""
    wm = as_gray(watermarked)
    orig = as_gray(original)
    if wm.shape != orig.shape:
        raise DimensionMismatch(f"watermarked {wm.shape} vs original {orig.shape}")
    layout = _Layout(wm.shape, params.roi)
    payload, _, _ = _read_fragile(wm, layout, params)
    voted, channel_bits = extract_logo(wm, orig, params, delta=payload.delta)
    return ExtractResult(
        payload=payload,
        logo_robust=voted,
        logo_fragile=payload.w1,
        text=payload.text,
        damage_percent=damage_percent(voted, payload.w1),
        authentic=layout.roi_hash(wm) == payload.roi_hash,
        channel_bits=channel_bits,
    )


def restore(watermarked, params: EmbedParams) -> np.ndarray:
    """Recover the exact cover image from a reversibly watermarked one."""
    wm = as_gray(watermarked)
    layout = _Layout(wm.shape, params.roi)
    payload, packages, flags = _read_fragile(wm, layout, params)
    if not payload.reversible:
        raise NotReversible("image was embedded without the reversibility record")

    flat = wm.ravel().copy()
    blocks = layout.blocks.ravel()
    lsb = rle6_decode(packages)
    if lsb.size != blocks.size:
        raise PayloadCorrupt(f"LSB record covers {lsb.size} pixels, expected {blocks.size}")
    flat[blocks] = (flat[blocks] & 0xFE) | lsb
    intermediate = flat.reshape(wm.shape)

    channels = layout.channels(intermediate)
    pending = iter(flags.tolist())

    def next_flag(loc):
        try:
            return next(pending)
        except StopIteration:
            raise PayloadCorrupt("eligibility flags exhausted") from None

    positions = walk_positions(surely_eligible(channels, payload.delta), params.key1,
                               payload.w1.size, next_flag)
    step = (2 * payload.w1.astype(np.int64) - 1) * payload.delta
    for ch, pos in zip(channels, positions):
        ch[pos] -= step
    return layout.synthesize(intermediate, channels)


def verify(image, params: EmbedParams) -> Verdict:
    img = as_gray(image)
    layout = _Layout(img.shape, params.roi)
    try:
        payload, _, _ = _read_fragile(img, layout, params)
    except (PayloadCorrupt, LengthMismatch):
        return Verdict(False, "PayloadCorrupt")
    if layout.roi_hash(img) != payload.roi_hash:
        return Verdict(False, "RoiHashMismatch")
    return Verdict(True)
