"""Deterministic per-trajectory random streams.

Streams are keyed by (master seed, module tag, trajectory index) through a
counter-based generator, so stream i is the same no matter how trajectories
are batched or distributed over workers.
"""

from __future__ import annotations

import hashlib

import numpy as np

__all__ = ["tag_hash", "trajectory_rng"]


def tag_hash(tag: str) -> int:
    """Stable 64-bit hash of a module tag."""
    digest = hashlib.sha256(tag.encode()).digest()
    return int.from_bytes(digest[:8], "little")


def trajectory_rng(seed: int, tag: str, index: int) -> np.random.Generator:
    """Generator for one trajectory, independent of batching and worker count."""
    key = ((seed ^ tag_hash(tag)) & 0xFFFFFFFFFFFFFFFF, index & 0xFFFFFFFFFFFFFFFF)
    return np.random.Generator(np.random.Philox(key=np.array(key, dtype=np.uint64)))
