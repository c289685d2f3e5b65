"""Exception hierarchy shared by every medmark module."""


class WatermarkError(Exception):
    """Base class for all medmark errors."""


# -- image I/O --------------------------------------------------------------

class PgmError(WatermarkError, ValueError):
    """The byte stream is not a PGM file this toolkit accepts."""


class PgmBadMagic(PgmError):
    pass


class PgmBadMaxval(PgmError):
    pass


class PgmTruncated(PgmError):
    pass


class PgmMalformedHeader(PgmError):
    pass


# -- geometry / arrays ------------------------------------------------------

class SpecOutOfBounds(WatermarkError, ValueError):
    pass


class OddDimension(WatermarkError, ValueError):
    pass


class DimensionMismatch(WatermarkError, ValueError):
    pass


class LengthMismatch(WatermarkError, ValueError):
    pass


class TooSmall(WatermarkError, ValueError):
    pass


class IndexOutOfRange(WatermarkError, IndexError):
    pass


class DuplicateIndex(WatermarkError, ValueError):
    pass


# -- payload codec ----------------------------------------------------------

class TextTooLong(WatermarkError, ValueError):
    pass


class NonAscii(WatermarkError, ValueError):
    pass


class ZeroState(WatermarkError, ValueError):
    pass


class ZeroLengthPackage(WatermarkError, ValueError):
    pass


class PayloadCorrupt(WatermarkError):
    """The fragile tier could not be decoded with the supplied keys."""


class BadMagic(PayloadCorrupt):
    pass


class BadVersion(PayloadCorrupt):
    pass


class RoiMismatch(PayloadCorrupt):
    """The ROI rectangle stored in the payload differs from the one supplied."""


# -- engine -----------------------------------------------------------------

class CapacityExceeded(WatermarkError):
    pass


class RobustCapacityExceeded(CapacityExceeded):
    pass


class NotReversible(WatermarkError):
    pass
