"""
Robustness to attacks
=====================

The logo is hidden four times, once per wavelet sub-band, and recovered by a
majority vote.  Salt-and-pepper noise only corrupts a few copies.  The fragile
tier is meant to break, and ``verify`` reports that.
"""

import numpy as np

from medmark import EmbedParams, RoiSpec, embed, extract_logo, verify
from medmark.attacks import AttackSpec
from medmark.payload import binarize_logo
from medmark.phantom import head_phantom, patient_record, random_logo

cover = head_phantom(seed=5)
logo = random_logo(5)
reference = binarize_logo(logo)
params = EmbedParams(key1=55, key2=555, roi=RoiSpec.from_rect(32, 32, 192, 192))
marked, _ = embed(cover, logo, patient_record(5), params)


def damage(img):
    voted, per_band = extract_logo(img, cover, params)
    band = [100 * np.mean(b != reference) for b in per_band]
    return 100 * np.mean(voted != reference), band


attacks = [
    AttackSpec("saltpepper", density=0.005, seed=1),
    AttackSpec("saltpepper", density=0.01, seed=1),
    AttackSpec("saltpepper", density=0.05, seed=1),
    AttackSpec("requant", step=4),
    AttackSpec("requant", step=16),
    AttackSpec("shuffle", block=8, seed=3),
]
print("attack                       voted %   LL / HL / LH / HH %      verdict")
for spec in attacks:
    hit = spec.apply(marked)
    voted, band = damage(hit)
    label = {"saltpepper": f"salt-and-pepper {spec.density}",
             "requant": f"requantize step {spec.step}",
             "shuffle": f"shuffle {spec.block}x{spec.block} tiles"}[spec.kind]
    bands = " / ".join(f"{b:5.2f}" for b in band)
    print(f"{label:28s} {voted:7.3f}   {bands}   {verify(hit, params)}")

# Removing rows changes the geometry; a non-blind comparison is then impossible.
cropped = AttackSpec("drop", rows=(0, 1)).apply(marked)
try:
    extract_logo(cropped, cover, params)
except Exception as exc:
    print("\nafter dropping two rows:", type(exc).__name__)
