"""Seeded random streams.

All randomness flows through numpy's Philox, a counter-based 64-bit
generator. A stream is keyed by ``(seed, *keys)``: the tuple is packed into
fixed-width 32-bit words (length-prefixed, so distinct tuples never collide
under SeedSequence's zero padding) and hashed by
:class:`numpy.random.SeedSequence`. Substreams for different trials or pairs
are therefore independent and can be created in any worker, in any order.
"""

import numpy as np

from .errors import ParameterError

SEED_MAX = 2**64 - 1


def check_seed(seed):
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
        raise ParameterError(f"seed must be an integer, got {seed!r}")
    seed = int(seed)
    if not 0 <= seed <= SEED_MAX:
        raise ParameterError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return seed


def _words(value):
    return [value & 0xFFFFFFFF, (value >> 32) & 0xFFFFFFFF]


def stream_key(seed, *keys):
    """Fixed-width uint32 encoding of ``(seed, *keys)``."""
    seed = check_seed(seed)
    words = [len(keys)] + _words(seed)
    for k in keys:
        k = int(k)
        if not 0 <= k <= SEED_MAX:
            raise ParameterError(f"stream key out of range: {k}")
        words += _words(k)
    return np.array(words, dtype=np.uint32)


def make_rng(seed, *keys):
    """Return a Philox-backed Generator for the substream ``(seed, *keys)``."""
    ss = np.random.SeedSequence(stream_key(seed, *keys))
    return np.random.Generator(np.random.Philox(ss))


def derive_seed(seed, *keys):
    """A 64-bit seed for the substream ``(seed, *keys)``."""
    lo, hi = np.random.SeedSequence(stream_key(seed, *keys)).generate_state(2, np.uint32)
    return int(lo) | int(hi) << 32
