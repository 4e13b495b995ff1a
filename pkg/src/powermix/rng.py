"""Reproducible random streams.

Every sampling operation in the library takes an explicit :class:`RandomStream`.
Streams are backed by numpy's Philox bit generator (counter-based) keyed
through a ``SeedSequence``, so a 64-bit seed fully determines all draws, and
``split`` derives statistically independent child streams for parallel work
without touching the parent's state.
"""

from __future__ import annotations

import numpy as np

__all__ = ["RandomStream"]


class RandomStream:
    """A splittable, counter-based random stream keyed by a 64-bit seed."""

    def __init__(self, seed: int | None = None, *, _entropy: np.random.SeedSequence | None = None):
        if _entropy is not None:
            self._seq = _entropy
        else:
            if seed is not None and not 0 <= int(seed) < 2**64:
                raise ValueError("seed must fit in 64 bits")
            self._seq = np.random.SeedSequence(seed)
        self.generator = np.random.Generator(np.random.Philox(self._seq))

    @property
    def seed_entropy(self):
        return self._seq.entropy

    def split(self, k: int) -> list["RandomStream"]:
        """Derive ``k`` independent child streams; the parent stays usable."""
        if k < 1:
            raise ValueError("k must be >= 1")
        return [RandomStream(_entropy=child) for child in self._seq.spawn(k)]

    # Thin passthroughs for the draws the library actually uses; anything
    # exotic can go through .generator directly.
    def uniform(self, low=0.0, high=1.0, size=None):
        return self.generator.uniform(low, high, size)

    def normal(self, loc=0.0, scale=1.0, size=None):
        return self.generator.normal(loc, scale, size)

    def beta(self, a, b, size=None):
        return self.generator.beta(a, b, size)

    def standard_cauchy(self, size=None):
        return self.generator.standard_cauchy(size)

    def triangular(self, left, mode, right, size=None):
        return self.generator.triangular(left, mode, right, size)

    def __repr__(self):
        return f"RandomStream(entropy={self._seq.entropy}, spawn_key={self._seq.spawn_key})"
