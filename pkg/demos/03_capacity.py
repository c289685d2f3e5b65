"""
How much room is there outside the ROI?
=======================================

Capacity is simply the number of pixels left after the ROI is taken out.
Rectangles, inscribed ellipses and arbitrary masks are all accepted.
"""

import numpy as np

from medmark import RoiSpec, embedding_capacity

shape = (256, 256)
print("192x192 square :", embedding_capacity(shape, RoiSpec.from_rect(32, 32, 192, 192)))
print("ellipse        :", embedding_capacity(shape, RoiSpec.from_ellipse(28, 20, 200, 216)))

# Masks built from the n pixels closest to the image centre.
rows, cols = np.mgrid[0:256, 0:256]
order = np.argsort(((rows - 127.5) ** 2 + (cols - 127.5) ** 2).ravel(), kind="stable")
for n in (33749, 17114):
    mask = np.zeros(256 * 256, np.uint8)
    mask[order[:n]] = 1
    spec = RoiSpec.from_mask(mask.reshape(shape))
    print(f"{n}-pixel mask :", embedding_capacity(shape, spec))

# The fragile tier uses 6-pixel blocks inside the even-sized strips around the
# ROI, so its usable bit count is a little below the raw pixel count.
from medmark.roi import roni_strips

part = roni_strips(RoiSpec.from_rect(32, 32, 192, 192), shape)
print("\nstrips:", part.strips)
print("6x1 blocks:", part.block_count, "->", 6 * part.block_count, "fragile bits")
