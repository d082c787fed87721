"""Exception types raised by the simulator."""


class IsacError(ValueError):
    """Base class for all simulator errors."""


class DegenerateDistance(IsacError):
    pass


class UnsupportedLength(IsacError):
    pass


class InsufficientAnchors(IsacError):
    pass


class AmbiguousGeometry(IsacError):
    pass


class InvalidRange(IsacError):
    pass


class SeriesTooShort(IsacError):
    pass


class NoCellAboveThreshold(IsacError):
    pass


class InvalidDrop(IsacError):
    pass


class EmptyInput(IsacError):
    pass


class ConfigError(IsacError):
    """Invalid configuration value or unknown configuration key."""
