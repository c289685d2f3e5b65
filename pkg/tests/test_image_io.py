import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from medmark.errors import (PgmBadMagic, PgmBadMaxval, PgmError,
                            PgmMalformedHeader, PgmTruncated)
from medmark.image_io import read_pgm, write_pgm


def test_read_binary():
    img = read_pgm(b"P5\n2 2\n255\n" + bytes([0, 255, 7, 9]))
    assert img.dtype == np.uint8
    assert img.tolist() == [[0, 255], [7, 9]]


def test_read_ascii():
    assert read_pgm(b"P2\n1 1\n255\n42\n").tolist() == [[42]]


def test_comments_in_header():
    data = b"P2\n# made by hand\n3 1 # width height\n255\n1 2 3\n"
    assert read_pgm(data).tolist() == [[1, 2, 3]]


def test_p2_and_p5_agree():
    rng = np.random.default_rng(0)
    img = rng.integers(0, 256, size=(5, 7), dtype=np.uint8)
    assert np.array_equal(read_pgm(write_pgm(img, ascii=True)), read_pgm(write_pgm(img)))


@pytest.mark.parametrize("data, exc", [
    (b"P6\n1 1\n255\n\x00\x00\x00", PgmBadMagic),
    (b"GIF89a", PgmBadMagic),
    (b"", PgmBadMagic),
    (b"P5\n1 1\n65535\n\x00\x00", PgmBadMaxval),
    (b"P5\n1 1\n15\n\x00", PgmBadMaxval),
    (b"P5\n2 2\n255\n\x00\x01", PgmTruncated),
    (b"P2\n2 2\n255\n1 2 3", PgmTruncated),
    (b"P5\n2 x\n255\n", PgmMalformedHeader),
    (b"P5\n2", PgmMalformedHeader),
    (b"P5\n0 3\n255\n", PgmMalformedHeader),
    (b"P2\n1 1\n255\n300\n", PgmError),
])
def test_rejects(data, exc):
    with pytest.raises(exc):
        read_pgm(data)


def test_write_ascii_exact():
    assert write_pgm(np.array([[42]], dtype=np.uint8), ascii=True) == b"P2\n1 1\n255\n42\n"


def test_write_binary_exact():
    img = np.array([[0, 255], [7, 9]], dtype=np.uint8)
    assert write_pgm(img) == b"P5\n2 2\n255\n" + bytes([0, 255, 7, 9])


def test_roundtrip_256():
    img = np.random.default_rng(1).integers(0, 256, size=(256, 256), dtype=np.uint8)
    for flag in (False, True):
        assert np.array_equal(read_pgm(write_pgm(img, ascii=flag)), img)


@settings(max_examples=60, deadline=None)
@given(arrays(np.uint8, st.tuples(st.integers(1, 12), st.integers(1, 12))), st.booleans())
def test_roundtrip_property(img, flag):
    assert np.array_equal(read_pgm(write_pgm(img, ascii=flag)), img)


@settings(max_examples=300, deadline=None)
@given(st.binary(max_size=40))
def test_parsing_is_total(data):
    # either a valid image or a typed error, never anything else
    try:
        img = read_pgm(data)
    except PgmError:
        return
    assert img.dtype == np.uint8 and img.ndim == 2


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.binary(max_size=20))
def test_parsing_is_total_with_valid_header(w, h, body):
    data = f"P5\n{w} {h}\n255\n".encode() + body
    try:
        img = read_pgm(data)
    except PgmError:
        return
    assert img.shape == (h, w)
