"""Deterministic RNG stream derivation.

Every stream is ``default_rng(SeedSequence(seed, spawn_key=(subsystem,
replica)))``.  Subsystem codes are fixed here so walks, births, lifetimes and
tilt decisions never share a stream, and replica ``i`` is reproducible in
isolation.
"""

from __future__ import annotations

import numpy as np

SUB_LINES = 1
SUB_ARAK = 2
SUB_BIRTHS = 3
SUB_LIFETIMES = 4
SUB_WALKS = 5
SUB_ACCEPT = 6
SUB_ENV = 7
SUB_HARNESS = 8


def stream(seed: int, subsystem: int, replica: int = 0) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=int(seed) & (2**64 - 1), spawn_key=(subsystem, replica))
    return np.random.default_rng(ss)
