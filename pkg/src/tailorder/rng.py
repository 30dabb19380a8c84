"""Deterministic, replayable random number streams.

Every stochastic routine in the package draws from an :class:`RngStream`, a
thin wrapper around numpy's counter-based Philox generator.  The same seed
always reproduces the same sample sequence bit for bit, and disjoint
substreams can be derived for independent components or parallel workers
without any coordination.
"""

from __future__ import annotations

import numpy as np


class RngStream:
    """A seeded random stream with deterministic substream derivation.

    Parameters
    ----------
    seed:
        64-bit integer seed.  Two streams with the same seed and spawn key
        replay identical sequences.
    spawn_key:
        Tuple of integers identifying a derived substream.  Normally not
        passed directly; use :meth:`substream`.
    """

    def __init__(self, seed: int = 0, spawn_key: tuple[int, ...] = ()):
        self.seed = int(seed)
        self.spawn_key = tuple(int(k) for k in spawn_key)
        seq = np.random.SeedSequence(entropy=self.seed, spawn_key=self.spawn_key)
        self._gen = np.random.Generator(np.random.Philox(seq))

    def substream(self, *key: int) -> "RngStream":
        """Derive an independent stream identified by ``key``.

        Substreams are a pure function of ``(seed, spawn_key, key)``: the
        parent's consumption state does not affect them.
        """
        return RngStream(self.seed, self.spawn_key + key)

    # Passthroughs for the handful of primitives the package needs.
    def uniform(self, n: int, low: float = 0.0, high: float = 1.0) -> np.ndarray:
        return self._gen.uniform(low, high, int(n))

    def exponential(self, n: int, scale: float = 1.0) -> np.ndarray:
        return self._gen.exponential(scale, int(n))

    def poisson(self, lam: float, n: int) -> np.ndarray:
        return self._gen.poisson(lam, int(n))

    def integers(self, low: int, high: int, n: int | None = None):
        return self._gen.integers(low, high, n)

    @property
    def generator(self) -> np.random.Generator:
        return self._gen

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed}, spawn_key={self.spawn_key})"
