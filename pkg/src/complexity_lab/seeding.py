"""Deterministic substream derivation from a single master seed.

Every randomized component receives its own child generator derived by
hashing (master, component, index), so runs are reproducible and workers
never share a stream.
"""

import hashlib

import numpy as np


def substream(master_seed: int, component: str, index: int = 0) -> np.random.Generator:
    """Independent generator for one named component of a run."""
    digest = hashlib.sha256(f"{master_seed}:{component}:{index}".encode()).digest()
    return np.random.default_rng(int.from_bytes(digest[:8], "little"))
