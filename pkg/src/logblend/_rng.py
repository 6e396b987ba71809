"""Seed handling for reproducible synthesis.

Seeds are user-facing signed integers; numpy's SeedSequence wants
non-negative entropy, so the 64-bit two's-complement image is used. Record
level randomness is derived from (seed, line id) so per-record work is
order-independent and safe to parallelize.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1


def seed_entropy(seed: int) -> int:
    return seed & _MASK64


def generator(seed: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=seed_entropy(seed)))


def record_generator(seed: int, line_id: int) -> np.random.Generator:
    return np.random.default_rng(
        np.random.SeedSequence(entropy=seed_entropy(seed), spawn_key=(line_id,))
    )
