"""8-bit grayscale rasters and uncompressed palettized BMP I/O.

Pixels are kept top-down, row-major, regardless of the bottom-up storage
order used by most BMP files, so 1-based linear indices stay stable across
a write/read cycle.
"""

from __future__ import annotations

import os
import struct
from dataclasses import dataclass

import numpy as np

__all__ = [
    "GrayImage",
    "BmpFormatError",
    "UnsupportedBmpError",
    "TruncatedBmpError",
    "linear_index",
    "encode_bmp",
    "decode_bmp",
    "read_bmp",
    "write_bmp",
]

_FILE_HEADER = struct.Struct("<2sIHHI")
_INFO_HEADER = struct.Struct("<IiiHHIIiiII")
_PALETTE_ENTRIES = 256


class BmpFormatError(ValueError):
    """Raised for a BMP whose headers cannot be parsed."""


class UnsupportedBmpError(BmpFormatError):
    """Raised for a well-formed BMP that is not 8-bit uncompressed."""


class TruncatedBmpError(BmpFormatError):
    """Raised when the pixel array ends before the headers say it should."""


@dataclass(frozen=True, eq=False)
class GrayImage:
    """Immutable 8-bit grayscale raster.

    ``pixels`` is a read-only, row-major ``uint8`` vector of length
    ``width * height``; use :attr:`array` for a ``(height, width)`` view.
    """

    width: int
    height: int
    pixels: np.ndarray

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError(f"image dimensions must be positive, got {self.width}x{self.height}")
        raw = np.asarray(self.pixels)
        if raw.size and (raw.min() < 0 or raw.max() > 255):
            raise ValueError("pixel intensities must lie in [0, 255]")
        px = np.array(raw, dtype=np.uint8).reshape(-1)
        if px.size != self.width * self.height:
            raise ValueError(
                f"expected {self.width * self.height} pixels, got {px.size}"
            )
        px.flags.writeable = False
        object.__setattr__(self, "pixels", px)

    @classmethod
    def from_array(cls, arr) -> GrayImage:
        arr = np.asarray(arr)
        if arr.ndim != 2:
            raise ValueError(f"expected a 2-D array, got shape {arr.shape}")
        h, w = arr.shape
        return cls(w, h, arr.reshape(-1))

    @classmethod
    def filled(cls, width: int, height: int, value: int = 0) -> GrayImage:
        return cls(width, height, np.full(width * height, value, dtype=np.uint8))

    @property
    def array(self) -> np.ndarray:
        return self.pixels.reshape(self.height, self.width)

    @property
    def size(self) -> int:
        return self.width * self.height

    def with_pixels(self, pixels) -> GrayImage:
        return GrayImage(self.width, self.height, pixels)

    def __eq__(self, other):
        if not isinstance(other, GrayImage):
            return NotImplemented
        return (
            self.width == other.width
            and self.height == other.height
            and np.array_equal(self.pixels, other.pixels)
        )

    def __hash__(self):
        return hash((self.width, self.height, self.pixels.tobytes()))

    def __repr__(self):
        return f"GrayImage(width={self.width}, height={self.height})"


def linear_index(img: GrayImage, row: int, col: int) -> int:
    """1-based row-major position of ``(row, col)``."""
    if not (0 <= row < img.height and 0 <= col < img.width):
        raise IndexError(f"({row}, {col}) outside {img.height}x{img.width} image")
    return 1 + row * img.width + col


def _stride(width: int) -> int:
    return (width + 3) & ~3


def encode_bmp(img: GrayImage) -> bytes:
    stride = _stride(img.width)
    offset = _FILE_HEADER.size + _INFO_HEADER.size + 4 * _PALETTE_ENTRIES
    image_size = stride * img.height
    file_header = _FILE_HEADER.pack(b"BM", offset + image_size, 0, 0, offset)
    info_header = _INFO_HEADER.pack(
        _INFO_HEADER.size, img.width, img.height, 1, 8, 0, image_size,
        2835, 2835, _PALETTE_ENTRIES, 0,
    )
    levels = np.arange(_PALETTE_ENTRIES, dtype=np.uint8)
    palette = np.stack([levels, levels, levels, np.zeros_like(levels)], axis=1)

    rows = np.zeros((img.height, stride), dtype=np.uint8)
    rows[:, : img.width] = img.array[::-1]
    return file_header + info_header + palette.tobytes() + rows.tobytes()


def decode_bmp(data: bytes) -> GrayImage:
    """Parse an uncompressed 8-bit BMP; pixel values are palette indices."""
    if len(data) < _FILE_HEADER.size + _INFO_HEADER.size:
        raise BmpFormatError("file too short for BMP headers")
    magic, _, _, _, offset = _FILE_HEADER.unpack_from(data, 0)
    if magic != b"BM":
        raise BmpFormatError(f"bad magic {magic!r}")
    (header_size, width, height, planes, bit_count, compression,
     _, _, _, colors_used, _) = _INFO_HEADER.unpack_from(data, _FILE_HEADER.size)
    if header_size < _INFO_HEADER.size:
        raise UnsupportedBmpError(f"unsupported info header size {header_size}")
    if planes != 1:
        raise BmpFormatError(f"biPlanes must be 1, got {planes}")
    if bit_count != 8:
        raise UnsupportedBmpError(f"only 8 bits per pixel supported, got {bit_count}")
    if compression != 0:
        raise UnsupportedBmpError(f"compressed BMP (biCompression={compression}) not supported")
    if colors_used > _PALETTE_ENTRIES:
        raise BmpFormatError(f"palette of {colors_used} entries exceeds 256")
    if width <= 0 or height == 0:
        raise BmpFormatError(f"invalid dimensions {width}x{height}")

    top_down = height < 0
    height = abs(height)
    stride = _stride(width)
    if offset < _FILE_HEADER.size + header_size:
        raise BmpFormatError(f"pixel offset {offset} overlaps headers")
    # the final row's padding may be omitted by some writers
    needed = offset + stride * (height - 1) + width
    if len(data) < needed:
        raise TruncatedBmpError(f"pixel data truncated: need {needed} bytes, have {len(data)}")

    buf = data[offset: offset + stride * height]
    buf = buf + bytes(stride * height - len(buf))
    rows = np.frombuffer(buf, dtype=np.uint8).reshape(height, stride)[:, :width]
    if not top_down:
        rows = rows[::-1]
    return GrayImage.from_array(rows)


def read_bmp(path: str | os.PathLike) -> GrayImage:
    with open(path, "rb") as fh:
        return decode_bmp(fh.read())


def write_bmp(img: GrayImage, path: str | os.PathLike) -> None:
    with open(path, "wb") as fh:
        fh.write(encode_bmp(img))
