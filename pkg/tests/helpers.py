import numpy as np


class SequenceStream:
    """Stream stub that replays a preset variate sequence.

    Lets tests inject exact uniforms into any sampler while still honoring
    the scalar/block draw protocol.
    """

    def __init__(self, values):
        self._values = [float(v) for v in values]
        self._next = 0

    def uniform01(self):
        if self._next >= len(self._values):
            raise AssertionError("SequenceStream exhausted")
        value = self._values[self._next]
        self._next += 1
        return value

    def uniform_block(self, n):
        return np.array([self.uniform01() for _ in range(int(n))], dtype=np.float64)

    def uniform_fill(self, out):
        out[...] = self.uniform_block(out.size)
        return out

    @property
    def consumed(self):
        return self._next
