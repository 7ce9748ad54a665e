"""Exception hierarchy for the gdt package."""


class GDTError(ValueError):
    """Base class for domain errors raised by gdt."""


class OddLength(GDTError):
    pass


class TooShort(GDTError):
    pass


class NonFiniteSample(GDTError):
    pass


class LengthMismatch(GDTError):
    pass


class BinOverflow(GDTError):
    pass


class NoFundamental(GDTError):
    pass


class DuplicateHarmonic(GDTError):
    pass


class UnknownName(GDTError):
    pass


class FrequencyOutOfRange(GDTError):
    pass


class GainLengthMismatch(GDTError):
    pass


class ZeroCandidate(GDTError):
    pass


class NotPowerOfTwo(GDTError):
    pass


class BadCount(GDTError):
    pass
