"""Bit-plane primitives: read/write one plane, bit inversion, pair shift.

All functions accept plain ints or numpy integer arrays.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

MAX_PLANE = 4


def _check_plane(p: int) -> int:
    p = int(p)
    if not 1 <= p <= MAX_PLANE:
        raise ValueError(f"bit plane must be in 1..{MAX_PLANE}, got {p}")
    return p


@dataclass(frozen=True)
class PlaneSet:
    """One or two distinct bit planes, stored in increasing order."""

    planes: tuple[int, ...]

    def __post_init__(self):
        ps = tuple(sorted(_check_plane(p) for p in self.planes))
        if not ps:
            raise ValueError("plane set must not be empty")
        if len(set(ps)) != len(ps):
            raise ValueError(f"duplicate planes in {self.planes}")
        if len(ps) > 2:
            raise ValueError("at most two planes may be combined")
        object.__setattr__(self, "planes", ps)

    @classmethod
    def parse(cls, text: str) -> PlaneSet:
        """Parse ``"1"`` or ``"1,3"``."""
        try:
            return cls(tuple(int(t) for t in text.split(",")))
        except ValueError as exc:
            raise ValueError(f"invalid plane set {text!r}: {exc}") from None

    @property
    def max_delta(self) -> int:
        return sum(1 << (p - 1) for p in self.planes)

    def __len__(self):
        return len(self.planes)

    def __iter__(self):
        return iter(self.planes)

    def __str__(self):
        return ",".join(map(str, self.planes))


SINGLETONS = tuple(PlaneSet((p,)) for p in range(1, MAX_PLANE + 1))
PAIRS = tuple(PlaneSet(c) for c in combinations(range(1, MAX_PLANE + 1), 2))
ALL_PLANE_SETS = SINGLETONS + PAIRS


def get_bit(value, p: int):
    return (value >> (p - 1)) & 1


def set_bit(value, p: int, b):
    mask = 1 << (p - 1)
    return (value & (0xFF ^ mask)) | (b << (p - 1))


def invert(b):
    return 1 - b


def shift_index(x, n: int | None = None):
    """Swap each 1-based pair ``(2k-1, 2k)``: odd ``x`` -> ``x+1``, even -> ``x-1``.

    If ``n`` is given, results outside ``[1, n]`` raise ``IndexError``.
    """
    if isinstance(x, np.ndarray):
        out = x + 1 - 2 * ((x & 1) == 0)
        if n is not None and out.size and (out.min() < 1 or out.max() > n):
            raise IndexError(f"shifted index outside [1, {n}]")
        return out
    x = int(x)
    if x < 1:
        raise IndexError(f"linear index must be >= 1, got {x}")
    out = x + 1 if x % 2 else x - 1
    if n is not None and out > n:
        raise IndexError(f"shifted index {out} outside [1, {n}]")
    return out
