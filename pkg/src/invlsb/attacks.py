"""Attacks on watermarked rasters and bookkeeping to measure recovery.

Covers cropping (with a known-offset remap back onto the original canvas),
seeded salt-and-pepper noise, and the difference-array trick that undoes a
lossy round trip given both decoded rasters.
"""

from __future__ import annotations

import os
import struct
from dataclasses import dataclass

import numpy as np

from . import rng
from .metrics import ShapeError
from .raster import GrayImage

LSBD_MAGIC = b"LSBD"
_LSBD_HEADER = struct.Struct("<4sII")


class IntegrityError(ValueError):
    """Raised when a difference array does not belong to the given image."""


@dataclass(frozen=True)
class CropSpec:
    offset_row: int
    offset_col: int
    new_width: int
    new_height: int

    def __post_init__(self):
        if self.offset_row < 0 or self.offset_col < 0:
            raise ValueError("crop offsets must be non-negative")
        if self.new_width < 1 or self.new_height < 1:
            raise ValueError("crop extent must be positive")

    def check_fits(self, width: int, height: int) -> None:
        if self.offset_col + self.new_width > width or self.offset_row + self.new_height > height:
            raise IndexError(f"{self} exceeds {width}x{height} image")


@dataclass(frozen=True, eq=False)
class DifferenceArray:
    width: int
    height: int
    deltas: np.ndarray

    def __post_init__(self):
        d = np.array(self.deltas, dtype=np.int16).reshape(-1)
        if d.size != self.width * self.height:
            raise ValueError(f"expected {self.width * self.height} deltas, got {d.size}")
        if d.size and (d.min() < -255 or d.max() > 255):
            raise ValueError("deltas must lie in [-255, 255]")
        d.flags.writeable = False
        object.__setattr__(self, "deltas", d)

    def __eq__(self, other):
        if not isinstance(other, DifferenceArray):
            return NotImplemented
        return (self.width, self.height) == (other.width, other.height) and np.array_equal(
            self.deltas, other.deltas
        )

    def to_bytes(self) -> bytes:
        return _LSBD_HEADER.pack(LSBD_MAGIC, self.width, self.height) + self.deltas.astype("<i2").tobytes()

    @classmethod
    def from_bytes(cls, data: bytes) -> DifferenceArray:
        if len(data) < _LSBD_HEADER.size:
            raise ValueError("difference file too short")
        magic, w, h = _LSBD_HEADER.unpack_from(data, 0)
        if magic != LSBD_MAGIC:
            raise ValueError(f"bad difference file magic {magic!r}")
        body = data[_LSBD_HEADER.size:]
        if len(body) != 2 * w * h:
            raise ValueError(f"difference file holds {len(body)} bytes, expected {2 * w * h}")
        return cls(w, h, np.frombuffer(body, dtype="<i2"))


def write_lsbd(diff: DifferenceArray, path: str | os.PathLike) -> None:
    with open(path, "wb") as fh:
        fh.write(diff.to_bytes())


def read_lsbd(path: str | os.PathLike) -> DifferenceArray:
    with open(path, "rb") as fh:
        return DifferenceArray.from_bytes(fh.read())


def crop(img: GrayImage, spec: CropSpec) -> GrayImage:
    spec.check_fits(img.width, img.height)
    r, c = spec.offset_row, spec.offset_col
    return GrayImage.from_array(img.array[r: r + spec.new_height, c: c + spec.new_width])


def remap_cropped(cropped: GrayImage, spec: CropSpec, original_width: int,
                  original_height: int, fill: int = 0) -> GrayImage:
    """Put a crop back at its original offset on a ``fill``-valued canvas."""
    if (cropped.width, cropped.height) != (spec.new_width, spec.new_height):
        raise IndexError("cropped image does not match the crop spec")
    spec.check_fits(original_width, original_height)
    if not 0 <= fill <= 255:
        raise ValueError(f"fill must be an intensity, got {fill}")
    canvas = np.full((original_height, original_width), fill, dtype=np.uint8)
    r, c = spec.offset_row, spec.offset_col
    canvas[r: r + spec.new_height, c: c + spec.new_width] = cropped.array
    return GrayImage.from_array(canvas)


def salt_pepper(img: GrayImage, density: float, seed: int) -> GrayImage:
    """Corrupt each pixel with probability ``density`` to 0 or 255 (even odds).

    Two raw words per pixel: the first decides corruption, the top bit of
    the second picks salt over pepper.
    """
    if not 0.0 <= density <= 1.0:
        raise ValueError(f"density must lie in [0, 1], got {density}")
    words = rng.raw_words(seed, rng.SALT_PEPPER, 2 * img.size)
    hit = rng.unit_floats(words[0::2]) < density
    salt = (words[1::2] >> np.uint64(63)).astype(bool)
    out = img.pixels.copy()
    out[hit & salt] = 255
    out[hit & ~salt] = 0
    return img.with_pixels(out)


def compute_difference(bmp: GrayImage, lossy: GrayImage) -> DifferenceArray:
    if (bmp.width, bmp.height) != (lossy.width, lossy.height):
        raise ShapeError(f"size mismatch: {bmp.width}x{bmp.height} vs {lossy.width}x{lossy.height}")
    deltas = bmp.pixels.astype(np.int16) - lossy.pixels.astype(np.int16)
    return DifferenceArray(bmp.width, bmp.height, deltas)


def restore(lossy: GrayImage, diff: DifferenceArray) -> GrayImage:
    if (lossy.width, lossy.height) != (diff.width, diff.height):
        raise ShapeError(f"size mismatch: {lossy.width}x{lossy.height} vs {diff.width}x{diff.height}")
    out = lossy.pixels.astype(np.int16) + diff.deltas
    if out.min() < 0 or out.max() > 255:
        raise IntegrityError("difference array does not match this image")
    return lossy.with_pixels(out.astype(np.uint8))
