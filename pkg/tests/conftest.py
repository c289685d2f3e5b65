import numpy as np
import pytest

from medmark import EmbedParams, RoiSpec, embed
from medmark.phantom import head_phantom, patient_record, random_logo

DEFAULT_ROI = (32, 32, 192, 192)


@pytest.fixture(scope="session")
def params():
    return EmbedParams(key1=0x1234_5678_9ABC_DEF0, key2=987654321,
                       roi=RoiSpec.from_rect(*DEFAULT_ROI))


@pytest.fixture(scope="session")
def cover():
    return head_phantom(3)


@pytest.fixture(scope="session")
def logo():
    return random_logo(3)


@pytest.fixture(scope="session")
def text():
    return patient_record(3)


@pytest.fixture(scope="session")
def marked(cover, logo, text, params):
    img, report = embed(cover, logo, text, params)
    img.flags.writeable = False
    return img, report
