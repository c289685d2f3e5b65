import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from medmark.errors import ZeroLengthPackage
from medmark.rle import rle6_decode, rle6_encode


def test_simple():
    assert rle6_encode([0, 0, 0, 0, 0, 1]) == [0b000101, 0b100001]


def test_greedy_split():
    assert rle6_encode([0] * 35) == [(0 << 5) | 31, 4]
    assert rle6_encode([1] * 62) == [0b111111, 0b111111]


def test_empty():
    assert rle6_encode([]) == []
    assert rle6_decode([]).size == 0


def test_zero_length_package():
    with pytest.raises(ZeroLengthPackage):
        rle6_decode([0b000011, 0b100000])


def test_roundtrip_1000():
    rng = np.random.default_rng(11)
    for _ in range(1000):
        n = int(rng.integers(0, 4097))
        p = rng.uniform(0.02, 0.98)
        bits = (rng.random(n) < p).astype(np.uint8)
        pk = rle6_encode(bits)
        assert np.array_equal(rle6_decode(pk), bits)
        assert sum(x & 31 for x in pk) == n
        assert len(pk) <= n
        assert all(0 < x < 64 and x & 31 for x in pk)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 1), max_size=300))
def test_roundtrip_property(bits):
    pk = rle6_encode(bits)
    assert rle6_decode(pk).tolist() == bits
