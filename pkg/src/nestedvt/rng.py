"""Seed derivation for reproducible, independent random streams.

Every randomized operation derives its own generator from the user
seed plus a fixed context label: the label string is hashed with
SHA-256 and the leading 8 bytes seed CPython's Mersenne Twister
(``random.Random``).  The mapping is platform-independent (no reliance
on ``hash()``) and documented here as the reference stream for all
pinned golden values.
"""

from __future__ import annotations

import hashlib
import random


def derived_rng(seed: int, *context: int | str) -> random.Random:
    """Generator for (seed, context), independent across contexts."""
    key = ":".join([str(seed), *[str(part) for part in context]])
    digest = hashlib.sha256(key.encode("ascii")).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def derived_seed(seed: int, *context: int | str) -> int:
    """64-bit child seed for (seed, context), same mapping as derived_rng."""
    key = ":".join([str(seed), *[str(part) for part in context]])
    digest = hashlib.sha256(key.encode("ascii")).digest()
    return int.from_bytes(digest[:8], "big")
