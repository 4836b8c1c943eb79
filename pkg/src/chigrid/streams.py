"""Deterministic, platform-independent random streams.

Every replication draws from its own stream derived from
``(master_seed, purpose, index)`` through SplitMix64 avalanche rounds, so
results do not depend on how replications are partitioned across workers.
The bit generator is Philox (counter-based, 64-bit words), which produces
identical output on every platform for a given key.

Purposes namespace the seed so that e.g. replication sampling and constant
estimation inside one experiment never share a stream.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_MASK64 = (1 << 64) - 1

PURPOSE_REPLICATION = 0
PURPOSE_H_ALPHA = 1
PURPOSE_H_GRID = 2
PURPOSE_TWO_INDEX = 3


def splitmix64(x: int) -> int:
    """One SplitMix64 round: a 64-bit bijection with full avalanche."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (x ^ (x >> 31)) & _MASK64


def stream_key(master_seed: int, index: int, purpose: int = 0) -> int:
    """128-bit Philox key for stream ``index`` under ``purpose``."""
    k = splitmix64(master_seed & _MASK64)
    k = splitmix64(k ^ (purpose & _MASK64))
    k = splitmix64(k ^ (index & _MASK64))
    return k | (splitmix64(k) << 64)


def derive_stream(master_seed: int, index: int, purpose: int = 0) -> np.random.Generator:
    """Independent generator for one replication."""
    return np.random.Generator(np.random.Philox(key=stream_key(master_seed, index, purpose)))


@dataclass(frozen=True)
class ReplicationStreams:
    """Family of per-replication streams sharing one master seed."""

    master_seed: int
    purpose: int = PURPOSE_REPLICATION

    def stream(self, index: int) -> np.random.Generator:
        return derive_stream(self.master_seed, index, self.purpose)
