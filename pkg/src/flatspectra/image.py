"""Binary PPM I/O and the colour-packed image pipeline.

Images carry a complex field in two colour channels: red is the real part,
green the imaginary part, blue is ignored on load and written as zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from flatspectra.engine import FlatField, SkewedSpectrum
from flatspectra.errors import DomainError, PPMError
from flatspectra.skew import Shape


@dataclass(frozen=True, eq=False)
class PackedImage:
    """8-bit RGB image, channels indexed ``[y, x]``."""

    red: np.ndarray
    green: np.ndarray
    blue: np.ndarray | None = None

    def __post_init__(self):
        red = np.asarray(self.red, dtype=np.uint8)
        green = np.asarray(self.green, dtype=np.uint8)
        if red.ndim != 2 or red.shape != green.shape:
            raise DomainError(f"channel shapes differ or are not 2-D: {red.shape}, {green.shape}")
        blue = np.zeros_like(red) if self.blue is None else np.asarray(self.blue, dtype=np.uint8)
        if blue.shape != red.shape:
            raise DomainError("blue channel shape mismatch")
        object.__setattr__(self, "red", red)
        object.__setattr__(self, "green", green)
        object.__setattr__(self, "blue", blue)

    @property
    def width(self) -> int:
        return self.red.shape[1]

    @property
    def height(self) -> int:
        return self.red.shape[0]

    def to_field(self) -> FlatField:
        return FlatField(
            Shape(self.width, self.height),
            self.red.astype(np.float64).ravel() + 1j * self.green.astype(np.float64).ravel(),
        )

    @classmethod
    def from_field(cls, field: FlatField) -> "PackedImage":
        """Round to nearest and clamp to 0..255; blue is zero."""
        if field.shape.ndim != 2:
            raise DomainError("only 2-D fields can be packed into an image")
        arr = field.to_array()
        return cls(_to_byte(arr.real), _to_byte(arr.imag))

    def to_bytes(self) -> bytes:
        header = f"P6\n{self.width} {self.height}\n255\n".encode("ascii")
        rgb = np.stack((self.red, self.green, self.blue), axis=-1)
        return header + rgb.tobytes()

    @classmethod
    def from_bytes(cls, data: bytes) -> "PackedImage":
        return parse_ppm(data)


def _to_byte(values: np.ndarray) -> np.ndarray:
    return np.clip(np.rint(values), 0, 255).astype(np.uint8)


_WHITESPACE = b" \t\n\r\v\f"


def _header_token(data: bytes, pos: int) -> tuple[bytes, int]:
    # skip whitespace and '#' comments, then read one token
    while pos < len(data):
        ch = data[pos:pos + 1]
        if ch in _WHITESPACE and ch:
            pos += 1
        elif ch == b"#":
            while pos < len(data) and data[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
        else:
            break
    start = pos
    while pos < len(data) and data[pos:pos + 1] not in _WHITESPACE and data[pos:pos + 1] != b"#":
        pos += 1
    if start == pos:
        raise PPMError("unexpected end of header", start)
    return data[start:pos], pos


def parse_ppm(data: bytes) -> PackedImage:
    """Decode a binary (P6) PPM with maxval 255."""
    if data[:2] != b"P6":
        raise PPMError(f"bad magic {data[:2]!r}, expected b'P6'", 0)
    pos = 2
    values = []
    for name in ("width", "height", "maxval"):
        start = pos
        token, pos = _header_token(data, pos)
        if not token.isdigit():
            raise PPMError(f"{name} is not a decimal integer: {token!r}", pos - len(token))
        values.append(int(token))
        if values[-1] < 1:
            raise PPMError(f"{name} must be positive", start)
    width, height, maxval = values
    if maxval != 255:
        raise PPMError(f"maxval {maxval} not supported, only 255", pos - len(str(maxval)))
    if pos >= len(data) or data[pos:pos + 1] not in _WHITESPACE:
        raise PPMError("missing whitespace after maxval", pos)
    pos += 1
    expected = width * height * 3
    payload = data[pos:pos + expected]
    if len(payload) < expected:
        raise PPMError(
            f"truncated pixel data: need {expected} bytes, found {len(payload)}",
            pos + len(payload),
        )
    rgb = np.frombuffer(payload, dtype=np.uint8).reshape(height, width, 3)
    return PackedImage(rgb[..., 0].copy(), rgb[..., 1].copy(), rgb[..., 2].copy())


def read_ppm(path) -> PackedImage:
    return parse_ppm(Path(path).read_bytes())


def write_ppm(image: PackedImage, path) -> None:
    path = Path(path)
    try:
        path.write_bytes(image.to_bytes())
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write image {path}: {exc.strerror}") from exc


def load_image(path) -> FlatField:
    """Load a P6 PPM as a complex field (red + i*green), N columns by M rows."""
    return read_ppm(path).to_field()


def save_image(field: FlatField, path) -> None:
    write_ppm(PackedImage.from_field(field), path)


def center(array: np.ndarray) -> np.ndarray:
    """Roll both axes by half their length so DC lands in the middle."""
    return np.roll(array, (array.shape[0] // 2, array.shape[1] // 2), axis=(0, 1))


def spectrum_view(spectrum: SkewedSpectrum) -> PackedImage:
    """Grayscale picture of a 2-D spectrum: centred log-magnitude.

    Horizontal is ``u`` and vertical ``v``, so the picture lines up with the
    spatial image even though the samples are stored with ``v`` fastest.
    The one-pixel skew is ignored for display.
    """
    if spectrum.shape.ndim != 2:
        raise DomainError("spectrum_view() needs a 2-D spectrum")
    level = np.log1p(np.abs(center(spectrum.to_uv())))
    lo, hi = float(level.min()), float(level.max())
    if hi - lo > 0:
        gray = (level - lo) * (255.0 / (hi - lo))
    else:
        gray = np.full(level.shape, 128.0 if hi > 0 else 0.0)
    gray = np.clip(np.rint(gray), 0, 255).astype(np.uint8)
    return PackedImage(gray, gray.copy())


def _pattern(width: int, height: int, phase: float) -> np.ndarray:
    y, x = np.mgrid[0:height, 0:width].astype(np.float64)
    cx, cy = (width - 1) / 2, (height - 1) / 2
    size = min(width, height)
    r = np.hypot(x - cx, y - cy)

    # low: target rings, about four periods across the image
    img = 128.0 + 28.0 * np.cos(2 * math.pi * r / (size / 4) + phase)

    # mid: block "lettering" in the central band
    cell = max(2, size // 8)
    blocks = ((x // cell + y // cell) % 2 == 0) & (np.abs(y - cy) < size / 5) & (np.abs(x - cx) < size / 3)
    img += np.where(blocks, 24.0, -8.0) * (np.abs(y - cy) < size / 5)

    # high: hard-edged framing circle
    ring = np.abs(r - 0.44 * size) < max(1.0, size / 48)
    img += np.where(ring, 40.0, 0.0)
    return img


def make_test_image(width: int, height: int) -> PackedImage:
    """Deterministic stand-in for a natural test picture.

    Red holds concentric low-frequency rings, a mid-frequency block pattern
    and a thin hard-edged circle; green is the same construction with the
    rings a quarter period out of phase.  Pixel values stay well inside
    0..255 so filtered results rarely clip.
    """
    if width < 16 or height < 16:
        raise DomainError("test image needs width and height >= 16")
    red = _pattern(width, height, 0.0)
    green = _pattern(width, height, math.pi / 2)
    return PackedImage(_to_byte(red), _to_byte(green))
