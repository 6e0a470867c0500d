"""Portable random streams.

All randomness flows through numpy's Philox4x64 counter-based generator,
whose output is specified bit-for-bit and independent of platform. Streams
are split by hashing a tuple of identifying parts into the 64-bit key, e.g.
``make_rng(style_seed, "doc", doc_id)``.
"""

from __future__ import annotations

import hashlib

import numpy as np


def derive_seed(*parts: object) -> int:
    """Stable 64-bit seed from arbitrary identifying parts."""
    text = "\x1f".join(repr(p) for p in parts).encode("utf-8")
    return int.from_bytes(hashlib.blake2b(text, digest_size=8).digest(), "little")


def make_rng(*parts: object) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=derive_seed(*parts)))
