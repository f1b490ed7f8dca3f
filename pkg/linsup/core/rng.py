"""Seeded random streams.

All randomness (instance generation, random initialization, the ATL2 reset)
comes from numpy's counter-based Philox bit generator, so a seed pins every
trace exactly.
"""

import numpy as np

SEED_BOUND = 2**64


def make_rng(seed: int) -> np.random.Generator:
    """Create the generator used by one run or one generated instance."""
    return np.random.Generator(np.random.Philox(seed))


def derive_seed(master: int, *key: int) -> int:
    """Derive a 64-bit child seed from a master seed and an integer path."""
    sequence = np.random.SeedSequence(entropy=master, spawn_key=key)
    return int(sequence.generate_state(1, dtype=np.uint64)[0])
