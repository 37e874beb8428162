"""Seeded element-to-machine assignment via a SplitMix64-style hash.

Every randomized choice in the distributed solvers flows through this module
so that runs are reproducible bit-for-bit from ``(seed, machines)`` alone and
an element keeps its machine when the ground set is restricted (the
assignment depends only on the element's global index, never on which other
elements happen to be present).

The tape hashes ``mix64(seed XOR (e * GOLDEN mod 2^64)) mod machines`` where
``mix64`` is the SplitMix64 output finalizer (xorshift-multiply chain, all
arithmetic mod 2^64).  The golden-ratio multiply decorrelates consecutive
indices before finalization.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_MIX_A = 0xBF58476D1CE4E5B9
_MIX_B = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """SplitMix64 finalizer on a 64-bit integer (scalar, exact)."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _MIX_A) & MASK64
    z = ((z ^ (z >> 27)) * _MIX_B) & MASK64
    return z ^ (z >> 31)


def mix64_array(z: np.ndarray) -> np.ndarray:
    """Vectorized :func:`mix64` over a uint64 array."""
    z = z.astype(np.uint64, copy=True)
    with np.errstate(over="ignore"):
        z ^= z >> np.uint64(30)
        z *= np.uint64(_MIX_A)
        z ^= z >> np.uint64(27)
        z *= np.uint64(_MIX_B)
        z ^= z >> np.uint64(31)
    return z


def derive_seed(seed: int, *streams: int) -> int:
    """Fold extra identifiers (node labels, level numbers) into ``seed`` to
    obtain an independent 64-bit stream seed."""
    s = seed & MASK64
    for t in streams:
        s = mix64(s ^ ((t * GOLDEN) & MASK64))
    return s


class RandomTape:
    """Deterministic element-to-machine assignment for ``machines`` workers.

    The tape is a pure function of ``(seed, machines)``; it holds no mutable
    state and is safe to share across threads.
    """

    def __init__(self, seed: int, machines: int):
        if seed < 0:
            raise ValueError(f"seed must be >= 0, got {seed}")
        if machines < 1:
            raise ValueError(f"machine count must be >= 1, got {machines}")
        self.seed = seed & MASK64
        self.machines = machines

    def assign(self, e: int) -> int:
        """Machine index in ``[0, machines)`` for global element index ``e``."""
        if e < 0:
            raise ValueError(f"element index must be >= 0, got {e}")
        return mix64(self.seed ^ ((e * GOLDEN) & MASK64)) % self.machines

    def assign_array(self, elements: np.ndarray) -> np.ndarray:
        """Vectorized :meth:`assign` over an integer array."""
        el = np.asarray(elements, dtype=np.uint64)
        with np.errstate(over="ignore"):
            keyed = np.uint64(self.seed) ^ (el * np.uint64(GOLDEN))
        return (mix64_array(keyed) % np.uint64(self.machines)).astype(np.int64)

    def partition(self, elements) -> list[np.ndarray]:
        """Split ``elements`` into ``machines`` buckets by assignment.

        Returns one sorted int64 array per machine; empty buckets are
        perfectly legal (and expected for small inputs).
        """
        el = np.sort(np.asarray(list(elements), dtype=np.int64))
        if el.size and el[0] < 0:
            raise ValueError("element indices must be >= 0")
        owner = self.assign_array(el)
        return [el[owner == i] for i in range(self.machines)]


def sample_without_replacement(n: int, count: int, stream_seed: int) -> np.ndarray:
    """``count`` distinct indices from ``range(n)``, ordered ascending.

    Partial Fisher-Yates driven by ``mix64(stream_seed XOR i*GOLDEN)``; the
    modulo step has negligible bias for the sizes used here.  ``count`` is
    clamped to ``n``.
    """
    if n < 0 or count < 0:
        raise ValueError("n and count must be >= 0")
    count = min(count, n)
    if count == 0:
        return np.empty(0, dtype=np.int64)
    pool = np.arange(n, dtype=np.int64)
    for i in range(count):
        j = i + mix64(stream_seed ^ ((i * GOLDEN) & MASK64)) % (n - i)
        pool[i], pool[j] = pool[j], pool[i]
    return np.sort(pool[:count])
