"""
The building blocks
===================

An integer Haar transform with an exact inverse, a 6-bit run-length codec, a
keyed permutation and a keystream cipher.  Each one is exactly invertible,
which is what makes restoration lossless.
"""

import numpy as np

from medmark import fwd_haar, inv_haar
from medmark.prng import keyed_shuffle, keystream_xor
from medmark.rle import rle6_decode, rle6_encode

block = np.array([[2, 4], [6, 8]])
bands = fwd_haar(block)
print("Haar of [[2,4],[6,8]]:", {k: int(v[0, 0]) for k, v in bands._asdict().items()})
print("inverse:", inv_haar(bands).tolist())

rng = np.random.default_rng(6)
x = rng.integers(-500, 500, size=(8, 12))
print("random round trip exact:", np.array_equal(inv_haar(fwd_haar(x)), x))

bits = np.array([0] * 40 + [1] * 3 + [0, 1], dtype=np.uint8)
packages = rle6_encode(bits)
print("\nrun-length packages:", [f"{p:06b}" for p in packages])
print("decodes back:", np.array_equal(rle6_decode(packages), bits))

print("\nkeyed shuffle of 8 with seed 42:", keyed_shuffle(8, 42).tolist())

secret = b"MW patient record"
sealed = keystream_xor(secret, 2024)
print("\nencrypted:", sealed.hex())
print("decrypted:", keystream_xor(sealed, 2024))
