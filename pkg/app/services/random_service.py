"""Counter-based random streams keyed by (master seed, lane).

Every generated sample owns a lane ``(sample_index, copy_index, op_tag)``.
The lane is mixed with the master seed through ``SeedSequence`` and drives a
Philox counter generator, so a lane's draws do not depend on which other lanes
were evaluated before it or on which thread evaluates it.
"""
import hashlib
from typing import Optional, Sequence, Tuple, Union

import numpy as np

MASK64 = (1 << 64) - 1

Lane = Tuple[int, int, str]


def tag_id(tag: str) -> int:
    """Stable 64-bit id of an operation tag."""
    digest = hashlib.blake2b(tag.encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "little")


class RandomStream:
    """Deterministic draw sequence of one lane."""

    def __init__(self, master_seed: int, lane: Lane = (0, 0, "")):
        sample_index, copy_index, op_tag = lane
        if sample_index < 0 or copy_index < 0:
            raise ValueError("lane indices must be non-negative")
        self.master_seed = int(master_seed) & MASK64
        self.lane: Lane = (int(sample_index), int(copy_index), str(op_tag))
        seq = np.random.SeedSequence(
            entropy=self.master_seed,
            spawn_key=(self.lane[0], self.lane[1], tag_id(self.lane[2])),
        )
        self._rng = np.random.Generator(np.random.Philox(seq))

    def __repr__(self) -> str:
        return f"RandomStream(seed={self.master_seed}, lane={self.lane})"

    def normal(self, loc: float = 0.0, scale: float = 1.0,
               size: Optional[Union[int, Tuple[int, ...]]] = None):
        return self._rng.normal(loc, scale, size)

    def uniform(self, low: float = 0.0, high: float = 1.0,
                size: Optional[Union[int, Tuple[int, ...]]] = None):
        return self._rng.uniform(low, high, size)

    def integers(self, low: int, high: Optional[int] = None,
                 size: Optional[Union[int, Tuple[int, ...]]] = None):
        """Integers in ``[low, high)``."""
        return self._rng.integers(low, high, size)

    def choice(self, options: Sequence, size: Optional[int] = None, replace: bool = True):
        return self._rng.choice(options, size=size, replace=replace)

    def permutation(self, n: int) -> np.ndarray:
        return self._rng.permutation(n)
