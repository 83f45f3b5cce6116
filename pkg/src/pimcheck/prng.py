"""Deterministic pseudo-random numbers for reproducible runs.

The generator is xorshift64* with the multiplier 0x2545F4914F6CDD1D:

    x ^= x >> 12;  x ^= x << 25;  x ^= x >> 27;  output = x * 0x2545F4914F6CDD1D

all in 64-bit unsigned arithmetic.  A stream is seeded from a user seed plus
a text label by mixing the FNV-1a hash of the label into the seed with one
splitmix64 step, so independent subcomputations get independent streams that
are stable across runs, platforms and process boundaries.
"""

MASK = (1 << 64) - 1
_MULT = 0x2545F4914F6CDD1D
_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3


def fnv1a(label):
    h = _FNV_OFFSET
    for byte in label.encode("utf-8"):
        h = ((h ^ byte) * _FNV_PRIME) & MASK
    return h


def _splitmix(x):
    x = (x + 0x9E3779B97F4A7C15) & MASK
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK
    return x ^ (x >> 31)


class XorShift:
    """xorshift64* stream; state is never zero."""

    def __init__(self, seed, label=""):
        state = (seed & MASK) ^ fnv1a(label)
        state = _splitmix(state)
        self.state = state if state != 0 else 0x9E3779B97F4A7C15

    def next_u64(self):
        x = self.state
        x ^= x >> 12
        x = (x ^ (x << 25)) & MASK
        x ^= x >> 27
        self.state = x
        return (x * _MULT) & MASK

    def randrange(self, n):
        """Uniform integer in [0, n) by rejection on the top bits."""
        if n <= 0:
            raise ValueError("randrange needs a positive bound")
        span = (MASK + 1) - ((MASK + 1) % n)
        while True:
            x = self.next_u64()
            if x < span:
                return x % n

    def choice(self, seq):
        return seq[self.randrange(len(seq))]
