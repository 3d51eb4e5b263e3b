"""Seeded, splittable random streams.

A stream is identified by a 64-bit seed plus a path of split indices.  Each
stream drives its own Philox counter generator keyed through numpy's
``SeedSequence(seed, spawn_key=path)``, so ``Rng(s).split(i)`` is the same
stream no matter which process builds it or in what order.
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidParameter

SEED_MASK = (1 << 64) - 1


class Rng:
    __slots__ = ("seed", "path", "_gen")

    def __init__(self, seed: int, path: tuple[int, ...] = ()):
        if not 0 <= seed <= SEED_MASK:
            raise InvalidParameter(f"seed must be a 64-bit unsigned integer, got {seed}")
        self.seed = seed
        self.path = tuple(path)
        self._gen: np.random.Generator | None = None

    @property
    def generator(self) -> np.random.Generator:
        if self._gen is None:
            ss = np.random.SeedSequence(self.seed, spawn_key=self.path)
            self._gen = np.random.Generator(np.random.Philox(ss))
        return self._gen

    def split(self, index: int) -> Rng:
        """Independent child stream; does not advance this stream."""
        return Rng(self.seed, self.path + (int(index),))

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)`` (unbiased)."""
        if bound <= 0:
            raise InvalidParameter(f"bound must be positive, got {bound}")
        return int(self.generator.integers(bound))

    def __repr__(self) -> str:
        return f"Rng(seed={self.seed}, path={self.path})"
