"""Reproducible random-stream derivation.

Every stochastic procedure in the package draws from a stream derived from
a master seed plus a tuple of string/int tokens naming the consumer, e.g.
``derive(seed, "randomwalk", problem_id, dim, run_index)``.  Streams for
distinct token tuples are statistically independent, and the same tuple
always reproduces the same stream.
"""

from __future__ import annotations

import hashlib

import numpy as np

__all__ = ["derive", "spawn_key"]


def spawn_key(*tokens: object) -> tuple[int, ...]:
    """Hash a token tuple into a SeedSequence spawn key.

    Tokens are rendered with ``repr`` and joined with a separator that cannot
    appear inside an int token, so ("ab", 1) and ("a", "b1") differ.
    """
    joined = "\x1f".join(repr(t) for t in tokens)
    digest = hashlib.blake2b(joined.encode("utf-8"), digest_size=16).digest()
    return tuple(int.from_bytes(digest[i : i + 4], "little") for i in range(0, 16, 4))


def derive(master_seed: int, *tokens: object) -> np.random.Generator:
    """Return a Generator for (master_seed, tokens), independent across tokens."""
    seq = np.random.SeedSequence(entropy=int(master_seed), spawn_key=spawn_key(*tokens))
    return np.random.Generator(np.random.PCG64(seq))
