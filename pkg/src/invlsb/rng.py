"""Pinned pseudorandom streams.

Every random draw in the package comes from numpy's PCG64 bit generator,
fed by ``SeedSequence(seed, spawn_key=(purpose,))`` and consumed as raw
64-bit words. Only the bit generator's raw output is used (never the
``Generator`` distribution methods, whose algorithms may change between
numpy releases), so a seed reproduces the same stream on every platform.
"""

import numpy as np
from numpy.random import PCG64, SeedSequence

# one independent stream family per consumer
PERMUTATION = 0
SALT_PEPPER = 1

_SEED_LIMIT = 1 << 64


def raw_words(seed: int, purpose: int, count: int) -> np.ndarray:
    if not 0 <= seed < _SEED_LIMIT:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    if count == 0:
        return np.zeros(0, dtype=np.uint64)
    bitgen = PCG64(SeedSequence(seed, spawn_key=(purpose,)))
    return np.asarray(bitgen.random_raw(count), dtype=np.uint64)


def unit_floats(words: np.ndarray) -> np.ndarray:
    """Map raw words to doubles in [0, 1) using their top 53 bits."""
    return (words >> np.uint64(11)).astype(np.float64) * (1.0 / (1 << 53))
