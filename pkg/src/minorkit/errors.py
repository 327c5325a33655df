"""Shared exception types."""


class CapacityError(RuntimeError):
    """An exact enumeration would exceed its configured cap.

    Raised instead of silently truncating, so callers can fall back to
    certified lower bounds.
    """


class CertificateError(ValueError):
    """A certificate is malformed or fails validation."""


class Graph6Error(ValueError):
    """A graph6 string cannot be decoded.

    The byte offset of the offending character is stored in ``offset``.
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset
