"""
Named, independent random streams derived from one master seed
"""

import hashlib
from typing import Sequence, Union

import numpy as np

Seed = Union[int, Sequence[int]]


def _name_key(name: str) -> int:
    digest = hashlib.blake2b(name.encode('utf-8'), digest_size=8).digest()
    return int.from_bytes(digest, 'little')


def make_rng(seed: Seed) -> np.random.Generator:
    """
    Build a generator from an integer seed or a sequence of integer keys.

    Args:
        seed: Non-negative integer or sequence of non-negative integers

    Returns:
        numpy Generator
    """
    if isinstance(seed, (int, np.integer)):
        return np.random.default_rng(np.random.SeedSequence(int(seed)))
    return np.random.default_rng(np.random.SeedSequence([int(s) for s in seed]))


class RandomStreams:
    """
    Registry of named streams under one master seed.

    Each consumer (population init, environments, selection, mutation, ...) draws
    from its own stream, so changing how many numbers one consumer takes does not
    shift the draws of another. Streams can be keyed further, e.g. by generation.
    """

    def __init__(self, master_seed: int):
        self.master_seed = int(master_seed)

    def seed_sequence(self, name: str, *keys: int) -> np.random.SeedSequence:
        spawn_key = (_name_key(name),) + tuple(int(k) for k in keys)
        return np.random.SeedSequence(self.master_seed, spawn_key=spawn_key)

    def fresh(self, name: str, *keys: int) -> np.random.Generator:
        """Return a new generator for (name, keys); repeated calls restart the stream."""
        return np.random.default_rng(self.seed_sequence(name, *keys))
