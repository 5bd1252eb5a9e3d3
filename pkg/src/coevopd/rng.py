"""Seeded random stream shared by the simulation kernel and its reference.

Draws come from numpy's PCG64 as raw 64-bit words, one word per draw, so any
implementation that consumes words in the same order reproduces a trajectory
exactly.  Words are decoded as:

* integer in ``[0, n)``: ``((word >> 32) * n) >> 32`` (n < 2**32)
* neighbour slot in ``[0, 8)``: ``word >> 61``
* uniform float in ``[0, 1)``: ``(word >> 11) * 2**-53``
"""

from __future__ import annotations

import numpy as np
from numba import njit

_U32 = np.uint64(32)
_U61 = np.uint64(61)
_U11 = np.uint64(11)
_TWO_M53 = 1.0 / 9007199254740992.0


@njit(cache=True, inline="always")
def word_below(word, n):
    return np.int64(((word >> _U32) * np.uint64(n)) >> _U32)


@njit(cache=True, inline="always")
def word_slot(word):
    return np.int64(word >> _U61)


@njit(cache=True, inline="always")
def word_unit(word):
    return np.float64(word >> _U11) * _TWO_M53


class RngStream:
    """Buffered stream of raw PCG64 words with a read cursor."""

    def __init__(self, seed: int, chunk: int = 1 << 16):
        self.seed = int(seed)
        self._bitgen = np.random.PCG64(self.seed)
        self._chunk = chunk
        self._buf = np.empty(0, dtype=np.uint64)
        self._pos = 0

    def reserve(self, k: int) -> tuple[np.ndarray, int]:
        """Return ``(buffer, cursor)`` with at least ``k`` unread words."""
        have = self._buf.size - self._pos
        if have < k:
            fresh = self._bitgen.random_raw(max(k - have, self._chunk))
            self._buf = np.concatenate([self._buf[self._pos:], fresh.astype(np.uint64)])
            self._pos = 0
        return self._buf, self._pos

    def commit(self, pos: int) -> None:
        """Advance the cursor after a kernel consumed words from ``reserve``."""
        if not self._pos <= pos <= self._buf.size:
            raise ValueError("cursor moved outside the reserved buffer")
        self._pos = pos

    def next_word(self) -> int:
        buf, pos = self.reserve(1)
        self._pos = pos + 1
        return int(buf[pos])

    def below(self, n: int) -> int:
        if not 0 < n < 1 << 32:
            raise ValueError(f"bound must be in (0, 2**32), got {n}")
        return ((self.next_word() >> 32) * n) >> 32

    def slot(self) -> int:
        return self.next_word() >> 61

    def random(self) -> float:
        return (self.next_word() >> 11) * _TWO_M53

    def sample(self, population: int, k: int) -> list[int]:
        """``k`` distinct indices from ``range(population)`` (partial Fisher-Yates)."""
        if not 0 <= k <= population:
            raise ValueError(f"cannot draw {k} of {population}")
        pool = list(range(population))
        for i in range(k):
            j = i + self.below(population - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]
