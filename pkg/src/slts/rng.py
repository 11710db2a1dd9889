"""Named counter-based random streams.

Every stochastic draw in this package comes from a stream addressed by a
base seed plus a key of labels (strings or integers).  Streams with
different keys are statistically independent, and the draws of one stream
never depend on how much another stream has consumed, so changing, say,
the number of columns generated does not reshuffle noise draws.
"""

from __future__ import annotations

import operator
import zlib

import numpy as np

__all__ = ["named_stream"]


def _key_part(part) -> int:
    if isinstance(part, str):
        return zlib.crc32(part.encode("utf-8"))
    return operator.index(part) & 0xFFFFFFFF


def named_stream(seed, *key) -> np.random.Generator:
    """A fresh Philox generator for stream ``key`` under ``seed``.

    String key parts are hashed with crc32 (stable across processes and
    platforms); integer parts are used as-is modulo 2**32.
    """
    seq = np.random.SeedSequence(
        entropy=operator.index(seed), spawn_key=tuple(_key_part(p) for p in key)
    )
    return np.random.Generator(np.random.Philox(seq))
