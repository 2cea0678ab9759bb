"""Inverted-bit, pair-shifted LSB text watermarking for grayscale images."""

from .attacks import (
    CropSpec,
    DifferenceArray,
    IntegrityError,
    compute_difference,
    crop,
    read_lsbd,
    remap_cropped,
    restore,
    salt_pepper,
    write_lsbd,
)
from .core import (
    CapacityError,
    CorruptHeaderError,
    EmbedRecipe,
    ExtractionReport,
    Payload,
    capacity_bytes,
    embed,
    extract,
    lee_permutation,
    recipe_capacity,
    region_capacity,
)
from .metrics import QualityScore, ShapeError, max_abs_delta, mse, psnr
from .planes import ALL_PLANE_SETS, PAIRS, SINGLETONS, PlaneSet, get_bit, invert, set_bit, shift_index
from .raster import GrayImage, linear_index, read_bmp, write_bmp

__version__ = "0.1.0"
