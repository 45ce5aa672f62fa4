"""
Error hierarchy for spinwav.

Every error derives from SpinwavError and from the builtin exception a caller
would naturally catch (ValueError for bad arguments, IOError for bad files).
"""


class SpinwavError(Exception):
    """Base class for all spinwav errors."""


class ParameterError(SpinwavError, ValueError):
    """Invalid parameter value or conflicting parameters."""


class DomainError(ParameterError):
    """Argument outside the domain of the function (angle, order, spin)."""


class DimensionError(SpinwavError, ValueError):
    """Band-limit, grid or array shape mismatch."""


class MapFileError(SpinwavError, IOError):
    """
    Malformed map file.

    Attributes:
        offset: Byte offset in the file where parsing failed
    """

    def __init__(self, message: str, offset: int = 0) -> None:
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset
