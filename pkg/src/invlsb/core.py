"""Watermark embedding and extraction.

Three schemes share one layout engine:

``proposed``
    16-pixel plain length header, then payload bits inverted and written at
    pair-swapped positions, replicated back-to-back while whole copies fit.
``plain_lsb``
    Same layout with bits stored as-is at their natural positions.
``lee``
    Header and one copy of the payload at positions drawn from a seeded
    permutation of the region, plane 1 only.

A *region* is the run of pixels from ``recipe.start`` to the end of the
image, viewed through a single bit plane. With two planes, the lower plane's
header holds the total payload length; its region takes as many bytes as it
can and the second plane's region takes the rest under its own header.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import rng
from .planes import PlaneSet, get_bit, invert, set_bit, shift_index
from .raster import GrayImage

SCHEMES = ("proposed", "plain_lsb", "lee")
HEADER_BITS = 16
MAX_LENGTH = (1 << HEADER_BITS) - 1

# header resynchronisation: neighbours within this many bit flips are tried
_SEARCH_RADIUS = 2
_SEARCH_TOL = 0.02


class CapacityError(ValueError):
    pass


class CorruptHeaderError(ValueError):
    pass


@dataclass(frozen=True)
class Payload:
    data: bytes

    def __post_init__(self):
        data = bytes(self.data)
        if len(data) > MAX_LENGTH:
            raise CapacityError(f"payload of {len(data)} bytes does not fit a 16-bit length header")
        object.__setattr__(self, "data", data)

    @classmethod
    def from_text(cls, text: str, encoding: str = "utf-8") -> Payload:
        return cls(text.encode(encoding))

    @property
    def length(self) -> int:
        return len(self.data)

    def bits(self) -> np.ndarray:
        """Payload bits, MSB first within each byte."""
        return np.unpackbits(np.frombuffer(self.data, dtype=np.uint8))


@dataclass(frozen=True)
class EmbedRecipe:
    """Everything the extractor must share with the embedder.

    ``auto`` overrides ``planes``: plane 1 alone, growing to planes 1 and 2
    once the payload exceeds one region. ``seed`` keys the ``lee`` scheme
    and is ignored by the others.
    """

    scheme: str = "proposed"
    planes: PlaneSet = field(default_factory=lambda: PlaneSet((1,)))
    auto: bool = False
    start: int = 1
    seed: int | None = None

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}; expected one of {SCHEMES}")
        if not isinstance(self.planes, PlaneSet):
            object.__setattr__(self, "planes", PlaneSet(tuple(self.planes)))
        if self.start < 1:
            raise ValueError(f"start index is 1-based, got {self.start}")
        if self.scheme == "lee" and self.seed is None:
            raise ValueError("the lee scheme requires a seed")

    @property
    def max_planes(self) -> tuple[int, ...]:
        """Planes that may carry payload for this recipe."""
        if self.scheme == "lee":
            return (1,)
        if self.auto:
            return (1, 2)
        return self.planes.planes


@dataclass(frozen=True)
class ExtractionReport:
    length: int
    copies: tuple[bytes, ...]
    consensus: bytes
    agreement: float
    planes: tuple[int, ...] = ()
    header: int | None = None

    @property
    def copy_count(self) -> int:
        return len(self.copies)


def region_capacity(n_pixels: int, start: int = 1) -> int:
    """Bytes one plane can carry in the region starting at ``start``."""
    region = n_pixels - start + 1
    cap = region // 8 - 2
    if cap < 1:
        raise CapacityError(
            f"region of {max(region, 0)} pixels cannot hold the 16-pixel header plus one byte"
        )
    return min(cap, MAX_LENGTH)


def capacity_bytes(width: int, height: int, planes: PlaneSet, start: int = 1) -> int:
    """Payload capacity in bytes: per-region capacity times the plane count."""
    return min(len(planes) * region_capacity(width * height, start), MAX_LENGTH)


def recipe_capacity(n_pixels: int, recipe: EmbedRecipe) -> int:
    per_region = region_capacity(n_pixels, recipe.start)
    return min(len(recipe.max_planes) * per_region, MAX_LENGTH)


def copies_for(region: int, length: int) -> int:
    if length == 0:
        return 0
    return (region - HEADER_BITS) // (8 * length)


def _header_bits(value: int) -> np.ndarray:
    return np.array([(value >> (HEADER_BITS - 1 - i)) & 1 for i in range(HEADER_BITS)], dtype=np.uint8)


def _bits_to_int(bits) -> int:
    value = 0
    for b in bits:
        value = (value << 1) | int(b)
    return value


def _write(out: np.ndarray, idx: np.ndarray, plane: int, bits: np.ndarray) -> None:
    out[idx] = set_bit(out[idx], plane, bits.astype(np.uint8))


def _payload_slots(count: int, copies: int, proposed: bool) -> np.ndarray:
    """1-based region slots holding the payload stream, in stream order."""
    slots = np.arange(HEADER_BITS + 1, HEADER_BITS + 1 + 8 * count * copies, dtype=np.int64)
    # the stream starts on an odd slot and has even length, so the swap stays inside it
    return shift_index(slots) if proposed else slots


def _split(length: int, per_region: int, planes: tuple[int, ...]):
    """(plane, header value, byte offset, byte count) for each active region."""
    first = min(length, per_region)
    regions = [(planes[0], length, 0, first)]
    if len(planes) == 2:
        regions.append((planes[1], length - first, first, length - first))
    return regions


def _active_planes(recipe: EmbedRecipe, length: int, per_region: int) -> tuple[int, ...]:
    if recipe.auto:
        return (1, 2) if length > per_region else (1,)
    return recipe.planes.planes


def embed(cover: GrayImage, payload, recipe: EmbedRecipe) -> GrayImage:
    """Return a watermarked copy of ``cover``; raises CapacityError if it does not fit."""
    if not isinstance(payload, Payload):
        payload = Payload(payload)
    n = cover.size
    capacity = recipe_capacity(n, recipe)
    length = payload.length
    if length > capacity:
        raise CapacityError(f"payload of {length} bytes exceeds capacity_bytes={capacity}")

    out = cover.pixels.copy()
    base = recipe.start - 1
    region = n - base

    if recipe.scheme == "lee":
        order = base + lee_permutation(recipe.seed, region) - 1
        bits = np.concatenate([_header_bits(length), payload.bits()])
        _write(out, order[: bits.size], 1, bits)
        return cover.with_pixels(out)

    proposed = recipe.scheme == "proposed"
    per_region = region_capacity(n, recipe.start)
    data = payload.data
    for plane, header, offset, count in _split(length, per_region, _active_planes(recipe, length, per_region)):
        _write(out, base + np.arange(HEADER_BITS), plane, _header_bits(header))
        if count == 0:
            continue
        copies = copies_for(region, count)
        stream = np.tile(Payload(data[offset: offset + count]).bits(), copies)
        if proposed:
            stream = invert(stream)
        _write(out, base + _payload_slots(count, copies, proposed) - 1, plane, stream)
    return cover.with_pixels(out)


def _read_header(px: np.ndarray, base: int, plane: int) -> int:
    return _bits_to_int(get_bit(px[base: base + HEADER_BITS], plane))


def _read_copies(px, base, region, plane, count, proposed) -> np.ndarray:
    """Decoded payload bits as a (copies, 8*count) array."""
    copies = copies_for(region, count)
    bits = get_bit(px[base + _payload_slots(count, copies, proposed) - 1], plane)
    if proposed:
        bits = invert(bits)
    return bits.astype(np.uint8).reshape(copies, 8 * count)


def _majority_score(block: np.ndarray) -> float:
    ones = block.sum(axis=0, dtype=np.int64)
    c = block.shape[0]
    return float(np.maximum(ones, c - ones).mean() / c)


def _search_header(px, base, region, plane, proposed, header) -> int:
    """Pick the most self-consistent length near a possibly damaged header.

    Candidates are the header value and its neighbours within
    ``_SEARCH_RADIUS`` bit flips that leave room for at least two copies.
    Each is scored by how strongly its copies agree bitwise. The read value
    is kept when its own copies agree to within ``_SEARCH_TOL`` or when no
    candidate beats it by more than that margin; otherwise the near-best
    candidate with the fewest flips wins.
    """
    def score(cand):
        return _majority_score(_read_copies(px, base, region, plane, cand, proposed))

    if header >= 1 and copies_for(region, header) >= 2 and score(header) >= 1 - _SEARCH_TOL:
        return header
    flips = [0] + [1 << i for i in range(HEADER_BITS)]
    if _SEARCH_RADIUS >= 2:
        flips += [(1 << i) | (1 << j) for i in range(HEADER_BITS) for j in range(i + 1, HEADER_BITS)]
    scores = {}
    for mask in flips:
        cand = header ^ mask
        if cand >= 1 and copies_for(region, cand) >= 2:
            scores[cand] = score(cand)
    if not scores:
        return header
    best = max(scores.values())
    if header in scores and scores[header] >= best - _SEARCH_TOL:
        return header
    near = [c for c, s in scores.items() if s >= best - _SEARCH_TOL]
    return min(near, key=lambda c: (bin(c ^ header).count("1"), c))


def _vote(block: np.ndarray) -> np.ndarray:
    ones = block.sum(axis=0, dtype=np.int64)
    c = block.shape[0]
    out = (2 * ones > c).astype(np.uint8)
    ties = 2 * ones == c
    out[ties] = block[0, ties]
    return out


def _report(blocks, length, planes, header) -> ExtractionReport:
    blocks = [b for b in blocks if b.shape[1]]
    if length == 0 or not blocks:
        return ExtractionReport(length, (), b"", 1.0, planes, header)
    n_copies = min(b.shape[0] for b in blocks)
    copies = tuple(
        b"".join(np.packbits(b[i]).tobytes() for b in blocks) for i in range(n_copies)
    )
    consensus = b"".join(np.packbits(_vote(b)).tobytes() for b in blocks)
    agree = sum(int(np.all(b == b[0], axis=0).sum()) for b in blocks)
    total = sum(b.shape[1] for b in blocks)
    return ExtractionReport(length, copies, consensus, agree / total, planes, header)


def extract(img: GrayImage, recipe: EmbedRecipe, *, header_search: bool = False) -> ExtractionReport:
    """Recover the payload written by :func:`embed` with the same recipe.

    With ``header_search``, a damaged single-region length header is
    repaired from the agreement between copies (see ``_search_header``).
    """
    n = img.size
    px = img.pixels
    base = recipe.start - 1
    region = n - base
    per_region = region_capacity(n, recipe.start)
    capacity = recipe_capacity(n, recipe)

    if recipe.scheme == "lee":
        order = base + lee_permutation(recipe.seed, region) - 1
        header = _bits_to_int(get_bit(px[order[:HEADER_BITS]], 1))
        if header > capacity:
            raise CorruptHeaderError(f"header length {header} exceeds capacity {capacity}")
        bits = get_bit(px[order[HEADER_BITS: HEADER_BITS + 8 * header]], 1).astype(np.uint8)
        return _report([bits.reshape(1, -1)], header, (1,), header)

    proposed = recipe.scheme == "proposed"
    planes = recipe.max_planes
    header = _read_header(px, base, planes[0])
    length = header
    if header_search and (len(planes) == 1 or recipe.auto):
        length = _search_header(px, base, region, planes[0], proposed, header)
    if length > capacity:
        raise CorruptHeaderError(f"header length {length} exceeds capacity {capacity}")

    active = _active_planes(recipe, length, per_region)
    blocks = []
    for plane, expected, _, count in _split(length, per_region, active):
        if plane != active[0]:
            got = _read_header(px, base, plane)
            if got != expected:
                raise CorruptHeaderError(
                    f"plane {plane} header says {got} bytes, expected {expected}"
                )
        if count:
            blocks.append(_read_copies(px, base, region, plane, count, proposed))
    return _report(blocks, length, active, header)


def lee_permutation(seed: int, n: int) -> np.ndarray:
    """Seeded bijection on ``[1, n]`` as an int64 array.

    Fisher-Yates from the top: for ``i = n-1 .. 1`` swap slot ``i`` with
    ``j = w mod (i+1)``, where ``w`` is the next raw PCG64 word (see
    :mod:`invlsb.rng`).
    """
    if n < 1:
        raise ValueError(f"permutation size must be positive, got {n}")
    perm = list(range(1, n + 1))
    if n > 1:
        words = rng.raw_words(seed, rng.PERMUTATION, n - 1)
        bounds = np.arange(n, 1, -1, dtype=np.uint64)
        for i, j in zip(range(n - 1, 0, -1), (words % bounds).tolist()):
            perm[i], perm[j] = perm[j], perm[i]
    return np.array(perm, dtype=np.int64)
