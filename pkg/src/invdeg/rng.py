"""Seeded randomness.

Every randomized routine takes a 64-bit seed or a generator built here. The
bit generator is numpy's PCG64 (permuted congruential generator), whose output
stream is fixed for a given seed across platforms and numpy versions.
"""
from __future__ import annotations

import numpy as np

SEED_MASK = (1 << 64) - 1


def make_rng(seed: int | np.random.Generator) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    if seed is None:
        raise ValueError("an explicit seed is required")
    return np.random.Generator(np.random.PCG64(int(seed) & SEED_MASK))


def randint(rng: np.random.Generator, lo: int, hi: int) -> int:
    """Uniform integer in ``[lo, hi)`` as a Python int."""
    return int(rng.integers(lo, hi))


def sub_seed(seed: int, *path: int) -> int:
    """Deterministic child seed, for seeding independent trials."""
    ss = np.random.SeedSequence([int(seed) & SEED_MASK, *path])
    return int(ss.generate_state(1, dtype=np.uint64)[0])
