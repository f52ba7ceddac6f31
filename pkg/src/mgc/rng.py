"""Counter-based random streams keyed by (seed, trial index, ...)."""

from __future__ import annotations

import os

import numpy as np

DEFAULT_SEED = 0


def default_seed() -> int:
    raw = os.environ.get("MGC_SEED")
    return int(raw) if raw not in (None, "") else DEFAULT_SEED


def substream(seed: int, *keys: int) -> np.random.Generator:
    """Philox generator for the given seed and key path.

    Streams for distinct key paths are independent, so trials can run in any
    order (or concurrently) and still reproduce the same draws.
    """
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in keys))
    return np.random.Generator(np.random.Philox(ss))
