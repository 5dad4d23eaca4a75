"""Seeded, splittable random source.

Draws come from the raw 64-bit PCG64 stream and are reduced to a range by
rejection sampling, so results depend only on the bit generator (whose
stream is stable across numpy releases) and on ``RNG_VERSION`` below.
"""

from __future__ import annotations

import numpy as np

RNG_ALGORITHM = "PCG64"
# Bump when the way raw words are turned into draws changes.
RNG_VERSION = 1
RNG_NAME = f"{RNG_ALGORITHM}/v{RNG_VERSION}"

DEFAULT_SEED = 2012

_BUFFER = 1024
_TWO64 = 1 << 64


class CubeRandom:
    def __init__(self, seed: int | np.random.SeedSequence = DEFAULT_SEED):
        if isinstance(seed, np.random.SeedSequence):
            self._seq = seed
        else:
            self._seq = np.random.SeedSequence(seed)
        self._bits = np.random.PCG64(self._seq)
        self._buf: list[int] = []

    def _raw(self) -> int:
        if not self._buf:
            self._buf = self._bits.random_raw(_BUFFER).tolist()
            self._buf.reverse()
        return self._buf.pop()

    def below(self, k: int) -> int:
        """Uniform integer in ``[0, k)``."""
        if k <= 0:
            raise ValueError("k must be positive")
        limit = _TWO64 - _TWO64 % k
        while True:
            r = self._raw()
            if r < limit:
                return r % k

    def choice(self, seq):
        return seq[self.below(len(seq))]

    def shuffle(self, items: list) -> None:
        for j in range(len(items) - 1, 0, -1):
            m = self.below(j + 1)
            items[j], items[m] = items[m], items[j]

    def spawn(self, count: int) -> list[CubeRandom]:
        """Independent child streams; child ``k`` is the same for any ``count > k``."""
        return [CubeRandom(s) for s in self._seq.spawn(count)]

    def child(self, k: int) -> CubeRandom:
        """The ``k``-th child stream, independent of how many siblings exist."""
        seq = np.random.SeedSequence(self._seq.entropy, spawn_key=self._seq.spawn_key + (k,))
        return CubeRandom(seq)
