"""Mean squared error and peak signal-to-noise ratio for 8-bit images."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .raster import GrayImage

PEAK = 255


class ShapeError(ValueError):
    pass


@dataclass(frozen=True)
class QualityScore:
    mse: float
    psnr_db: float  # math.inf when the images are identical

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.psnr_db)

    def format_psnr(self, digits: int = 4) -> str:
        return "inf" if self.is_infinite else f"{self.psnr_db:.{digits}f}"


def _check(a: GrayImage, b: GrayImage) -> None:
    if (a.width, a.height) != (b.width, b.height):
        raise ShapeError(f"size mismatch: {a.width}x{a.height} vs {b.width}x{b.height}")


def squared_error_sum(a: GrayImage, b: GrayImage) -> int:
    _check(a, b)
    d = a.pixels.astype(np.int64) - b.pixels.astype(np.int64)
    return int(np.dot(d, d))


def mse(a: GrayImage, b: GrayImage) -> float:
    # integer accumulation, one division
    return squared_error_sum(a, b) / a.size


def psnr(a: GrayImage, b: GrayImage) -> QualityScore:
    err = mse(a, b)
    if err == 0:
        return QualityScore(0.0, math.inf)
    return QualityScore(err, 10.0 * math.log10(PEAK * PEAK / err))


def max_abs_delta(a: GrayImage, b: GrayImage) -> int:
    _check(a, b)
    return int(np.abs(a.pixels.astype(np.int16) - b.pixels.astype(np.int16)).max())
