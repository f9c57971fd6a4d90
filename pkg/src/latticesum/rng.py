"""SplitMix64: a tiny, fully specified 64-bit generator.

State advances by the golden-ratio constant ``0x9E3779B97F4A7C15``; each
output is the state passed through the mixing function :func:`mix64`.
Bounded integers use rejection sampling on ``next_u64() % n`` so that
every implementation of this algorithm replays the same streams.
"""

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        return mix64(self.state)

    def below(self, n: int) -> int:
        """Uniform integer in ``[0, n)``."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (1 << 64) - (1 << 64) % n
        while True:
            r = self.next_u64()
            if r < limit:
                return r % n

    def randint(self, a: int, b: int) -> int:
        """Uniform integer in ``[a, b]``, both ends included."""
        if b < a:
            raise ValueError("empty range")
        return a + self.below(b - a + 1)

    def choice(self, seq):
        return seq[self.below(len(seq))]

    @classmethod
    def for_trial(cls, seed: int, trial: int) -> "SplitMix64":
        """Independent stream for trial ``trial`` of a campaign seeded with ``seed``."""
        return cls(mix64(seed ^ mix64(trial)))
