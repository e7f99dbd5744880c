"""Deterministic random-stream derivation.

Every stochastic component draws from a generator derived from a master seed
plus an integer path (for example ``(depth, cell_code)`` for a quadtree cell,
or ``(case, config, trial)`` for a benchmark trial). Streams with different
paths are statistically independent, and the mapping is stable across runs,
platforms, and any evaluation order, so results never depend on scheduling.
"""

from __future__ import annotations

import numpy as np

__all__ = ["substream", "derive_seed"]


def substream(seed: int, *path: int) -> np.random.Generator:
    """Return the generator owned by ``(seed, *path)``.

    The same arguments always yield a generator producing the identical
    sequence; distinct paths yield independent streams.
    """
    if seed < 0:
        raise ValueError("seed must be a non-negative integer")
    entropy = (int(seed),) + tuple(int(p) for p in path)
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))


def derive_seed(seed: int, *path: int) -> int:
    """Collapse ``(seed, *path)`` into a single derived 64-bit seed."""
    if seed < 0:
        raise ValueError("seed must be a non-negative integer")
    entropy = (int(seed),) + tuple(int(p) for p in path)
    state = np.random.SeedSequence(entropy).generate_state(2, np.uint64)
    return int(state[0])
