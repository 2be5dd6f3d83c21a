"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain an operation is defined on."""


class UnsupportedLengthError(DomainError):
    """The radix-2 FFT was asked for a length that is not a power of two."""

    def __init__(self, length: int):
        self.length = length
        super().__init__(f"radix-2 FFT needs a power-of-two length, got {length}")


class FilterConfigError(ValueError):
    """A FilterSpec is inconsistent (missing mask, bad radius, unknown kind)."""


class VerificationCapError(RuntimeError):
    """The direct-sum oracle was asked to check a field larger than its cap."""


class PPMError(ValueError):
    """Malformed binary PPM data.  ``offset`` is the byte position at fault."""

    def __init__(self, message: str, offset: int):
        self.offset = offset
        super().__init__(f"{message} (at byte offset {offset})")
