import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from medmark import EmbedParams, RoiSpec, embed, extract, extract_logo, restore, verify
from medmark.engine import (_Layout, damage_percent, eligible_locations,
                            majority_vote, select_positions)
from medmark.errors import (BadMagic, CapacityExceeded, LengthMismatch,
                            NotReversible, PayloadCorrupt, RobustCapacityExceeded)
from medmark.payload import binarize_logo, bits_to_int
from medmark.phantom import head_phantom, patient_record, random_logo


def _with(params, **kw):
    fields = dict(key1=params.key1, key2=params.key2, roi=params.roi,
                  delta=params.delta, reversible=params.reversible)
    fields.update(kw)
    return EmbedParams(**fields)


def test_roi_untouched(cover, marked):
    img, _ = marked
    assert np.array_equal(img[32:224, 32:224], cover[32:224, 32:224])
    assert not np.array_equal(img, cover)


def test_roundtrip(cover, logo, text, params, marked):
    img, _ = marked
    res = extract(img, cover, params)
    assert np.array_equal(res.logo_robust, binarize_logo(logo))
    assert np.array_equal(res.logo_fragile, binarize_logo(logo))
    assert res.text == text
    assert res.damage_percent == 0.0
    assert res.authentic


def test_restore_exact(cover, params, marked):
    assert np.array_equal(restore(marked[0], params), cover)


def test_report(marked):
    _, rep = marked
    assert rep.roni_pixels == 28672
    assert rep.fragile_capacity_bits == 6 * (28672 // 6)
    assert rep.fragile_bits_used <= rep.fragile_capacity_bits
    assert rep.robust_slots_used == [1024] * 4
    assert rep.psnr_db > 40 and rep.ssim > 0.98
    d = json.loads(rep.to_json())
    for name in ("roni_pixels", "fragile_bits_used", "fragile_capacity_bits",
                 "robust_slots_used", "psnr_db", "ssim", "roi_hash"):
        assert name in d


def test_capacity_exceeded(cover, logo, text, params):
    with pytest.raises(CapacityExceeded):
        embed(cover, logo, text, _with(params, roi=RoiSpec.from_rect(1, 1, 254, 254)))


def test_noisy_lsb_plane_overflows(logo, text, params):
    noisy = np.random.default_rng(0).integers(30, 220, (256, 256), dtype=np.uint8)
    with pytest.raises(CapacityExceeded):
        embed(noisy, logo, text, params)


def test_wrong_key2(cover, params, marked):
    bad = _with(params, key2=params.key2 ^ 1)
    with pytest.raises(BadMagic):
        extract(marked[0], cover, bad)
    with pytest.raises(BadMagic):
        restore(marked[0], bad)


def test_wrong_roi_rejected(cover, params, marked):
    with pytest.raises(PayloadCorrupt):
        extract(marked[0], cover, _with(params, roi=RoiSpec.from_rect(30, 32, 192, 192)))


def test_not_reversible(cover, logo, text, params):
    p = _with(params, reversible=False)
    img, _ = embed(cover, logo, text, p)
    with pytest.raises(NotReversible):
        restore(img, p)
    res = extract(img, cover, p)
    assert res.damage_percent == 0.0 and res.text == text
    assert not res.payload.reversible


def test_verify_states(cover, params, marked):
    img = marked[0]
    assert verify(img, params).authentic
    assert str(verify(img, params)) == "Authentic"
    touched = img.copy()
    touched[100, 100] += 1
    v = verify(touched, params)
    assert (v.authentic, v.reason) == (False, "RoiHashMismatch")


def _stream_bits(img, params):
    layout = _Layout(img.shape, params.roi)
    order = layout.partition.block_order(params.key1)
    return layout, order, (img.ravel()[layout.blocks[order]] & 1)


def test_verify_block_zeroed(params, marked):
    img = marked[0]
    layout, order, bits = _stream_bits(img, params)
    count = bits_to_int(bits.ravel()[:32])
    header_start = (32 + 6 * count) // 6
    # a header block that holds at least one set bit, so zeroing it changes the stream
    j = next(j for j in range(header_start + 1, header_start + 30) if bits[j].any())
    tampered = img.copy()
    tampered.ravel()[layout.blocks[order[j]]] = 0
    v = verify(tampered, params)
    assert (v.authentic, v.reason) == (False, "PayloadCorrupt")


def test_damage_percent():
    a = np.zeros(1024, np.uint8)
    assert damage_percent(a, a) == 0.0
    assert damage_percent(a, 1 - a) == 100.0
    b = a.copy()
    b[17] = 1
    assert damage_percent(b, a) == 100 / 1024 == 0.09765625
    with pytest.raises(LengthMismatch):
        damage_percent(a, a[:10])


def test_tie_break():
    assert majority_vote(np.array([[1], [0], [1], [0]])).tolist() == [1]
    assert majority_vote(np.array([[0], [1], [1], [0]])).tolist() == [0]
    assert majority_vote(np.array([[0], [1], [1], [1]])).tolist() == [1]
    assert majority_vote(np.array([[1], [0], [0], [0]])).tolist() == [0]


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(*(st.integers(0, 1),) * 4), min_size=1, max_size=50),
       st.permutations([1, 2, 3]))
def test_vote_invariant_under_detail_permutation(rows, perm):
    cb = np.array(rows, dtype=np.uint8).T
    assert np.array_equal(majority_vote(cb), majority_vote(cb[[0] + list(perm)]))


def test_fragile_noise_never_flips_robust_signs(cover, params, marked):
    img = marked[0]
    layout = _Layout(cover.shape, params.roi)
    c0 = layout.channels(cover)
    c1 = layout.channels(img)
    positions, _ = select_positions(eligible_locations(c0, params.delta), params.key1)
    w1 = extract(img, cover, params).logo_fragile.astype(np.int64)
    sign = 2 * w1 - 1
    # an LSB write moves LL by <= 1, HL and LH by <= 2, HH by <= 4
    for band, slack in zip(range(4), (1, 2, 2, 4)):
        diff = c1[band][positions[band]] - c0[band][positions[band]]
        assert np.all(diff * sign >= params.delta - slack)


def test_other_rois_roundtrip(logo, text):
    cover = head_phantom(11)
    rr, cc = np.mgrid[0:256, 0:256]
    mask = ((rr - 128) ** 2 / 100 ** 2 + (cc - 128) ** 2 / 90 ** 2 < 1).astype(np.uint8) * 255
    for roi in (RoiSpec.from_ellipse(30, 20, 196, 216), RoiSpec.from_mask(mask),
                RoiSpec.from_rect(33, 27, 187, 193)):
        p = EmbedParams(key1=5, key2=6, roi=roi)
        img, _ = embed(cover, logo, text, p)
        x, y, w, h = roi.bounding_rect()
        assert np.array_equal(img[y:y + h, x:x + w], cover[y:y + h, x:x + w])
        assert np.array_equal(restore(img, p), cover)
        res = extract(img, cover, p)
        assert res.damage_percent == 0.0 and res.text == text and res.authentic


def test_odd_image_size(logo, text):
    cover = head_phantom(4, shape=(251, 245))
    p = EmbedParams(key1=1, key2=2, roi=RoiSpec.from_rect(31, 29, 181, 187))
    img, _ = embed(cover, logo, text, p)
    assert np.array_equal(restore(img, p), cover)
    assert extract(img, cover, p).damage_percent == 0.0


def test_skip_rule_survives_restore(logo, text):
    # a black left half makes many locations ineligible for -delta
    cover = head_phantom(5).copy()
    cover[:, :128] = np.where(cover[:, :128] < 90, 3, cover[:, :128])
    p = EmbedParams(key1=77, key2=88, roi=RoiSpec.from_rect(32, 32, 192, 192))
    img, rep = embed(cover, logo, text, p)
    assert rep.skipped_locations > 0
    assert rep.eligibility_flags >= rep.skipped_locations
    assert np.array_equal(restore(img, p), cover)
    res = extract(img, cover, p)
    assert res.damage_percent == 0.0


def test_saturated_image_lacks_robust_capacity(logo, text, params):
    flat = np.zeros((256, 256), np.uint8)
    with pytest.raises(RobustCapacityExceeded):
        embed(flat, logo, text, params)


@pytest.mark.parametrize("delta", [1, 3, 5, 8, 12, 20])
def test_delta_values_reversible(delta, logo, text):
    # deltas off a multiple of 8 disturb the LSB plane, so give them a large RONI
    cover = head_phantom(9, (512, 512))
    p = EmbedParams(key1=5, key2=6, roi=RoiSpec.from_rect(96, 96, 320, 320), delta=delta)
    img, _ = embed(cover, logo, text, p)
    assert np.array_equal(restore(img, p), cover)
    if delta >= 8:
        assert extract(img, cover, p).damage_percent == 0.0


def test_odd_delta_overflows_small_roni(logo, text, params):
    with pytest.raises(CapacityExceeded):
        embed(head_phantom(9), logo, text, _with(params, delta=3))


def test_embed_is_deterministic(cover, logo, text, params, marked):
    again, _ = embed(cover, logo, text, params)
    assert np.array_equal(again, marked[0])


def test_extract_logo_after_noise(cover, params, marked):
    from medmark.attacks import salt_pepper
    voted, copies = extract_logo(salt_pepper(marked[0], 0.01, 1), cover, params)
    assert copies.shape == (4, 1024)
    w1 = extract(marked[0], cover, params).logo_fragile
    assert damage_percent(voted, w1) < 5


def test_keys_validated(params):
    with pytest.raises(ValueError):
        _with(params, key1=-1)
    with pytest.raises(ValueError):
        _with(params, delta=0)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([3, 8, 16]))
def test_corner_check_matches_full_grid(seed, delta):
    from medmark.engine import surely_eligible
    from medmark.wavelet import SubBands, fwd_haar, inv_haar
    rng = np.random.default_rng(seed)
    # one 2x2 block per location, biased towards the range limits
    pixels = rng.choice([0, 1, 5, 20, 128, 235, 250, 254, 255], size=(2, 80)) \
        + rng.integers(0, 3, size=(2, 80))
    pixels = np.clip(pixels, 0, 255)
    bands = fwd_haar(pixels)
    ch = [b.ravel() for b in bands]
    full = np.ones(ch[0].size, dtype=bool)
    sure_full = np.ones(ch[0].size, dtype=bool)
    import itertools
    for reach, acc in ((1, full), (2, sure_full)):
        for o in itertools.product(range(-reach, reach + 1), repeat=4):
            pix = inv_haar(SubBands(*(ch[c].reshape(1, -1) + o[c] * delta for c in range(4))))
            acc &= ((pix >= 0) & (pix <= 255)).reshape(2, -1, 2).all(axis=(0, 2))
    assert np.array_equal(eligible_locations(ch, delta), full)
    assert np.array_equal(surely_eligible(ch, delta), sure_full)
