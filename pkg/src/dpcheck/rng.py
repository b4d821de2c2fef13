"""Reproducible random-number streams.

Every Monte Carlo routine in this package draws from an :class:`RngStream`,
which maps a 64-bit seed plus a text label to an independent PCG64 substream.
The same (seed, stream_id) pair yields the same draw sequence on every run
and platform, and distinct labels give statistically independent streams, so
results do not depend on how work is scheduled across replications.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError

_SEED_LIMIT = 2**64


def _spawn_key(stream_id: str) -> tuple[int, ...]:
    # First 128 bits of SHA-256 of the label, as four uint32 words.
    digest = hashlib.sha256(stream_id.encode("utf-8")).digest()
    return tuple(int.from_bytes(digest[i : i + 4], "little") for i in range(0, 16, 4))


@dataclass(frozen=True)
class RngStream:
    """A named, reproducible substream of a master seed."""

    seed: int
    stream_id: str = "root"

    def __post_init__(self) -> None:
        if not isinstance(self.seed, int) or not 0 <= self.seed < _SEED_LIMIT:
            raise ConfigError(f"seed must be an integer in [0, 2^64), got {self.seed!r}")

    def generator(self) -> np.random.Generator:
        """A fresh generator positioned at the start of this substream."""
        ss = np.random.SeedSequence(self.seed, spawn_key=_spawn_key(self.stream_id))
        return np.random.Generator(np.random.PCG64(ss))

    def child(self, label: object) -> "RngStream":
        """Derive a sub-label, e.g. stream.child('prior').child(7)."""
        return RngStream(self.seed, f"{self.stream_id}/{label}")


def derive_seed(seed: int, label: str) -> int:
    """A 64-bit seed deterministically derived from a master seed and a label.

    Used by the scenario harness to give every replication its own master
    seed while keeping the whole experiment reproducible from one integer.
    """
    words = RngStream(seed, label).generator().integers(0, 2**32, size=2, dtype=np.uint64)
    return int(words[0] << np.uint64(32) | words[1])
