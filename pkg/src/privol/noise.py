"""Seeded, counter-based randomness.

Every random draw in the package goes through a :class:`NoiseSource`. A
source is keyed by a 64-bit seed and backed by the Philox counter-based bit
generator, so a (seed, draws-taken) pair pins the state exactly. Independent
streams for learners, adversaries and replications are derived by hashing the
master seed together with string/int tags, never by sequential spawning, so
adding a replication never perturbs an existing one.
"""

from __future__ import annotations

import hashlib
import math

import numpy as np

from .errors import ParameterError

_MASK64 = (1 << 64) - 1
_BLOCK = 256


def derive_seed(master: int, *tags) -> int:
    """Hash ``master`` and ``tags`` into a fresh 64-bit seed."""
    h = hashlib.blake2b(digest_size=8)
    h.update(repr((int(master) & _MASK64,) + tuple(tags)).encode())
    return int.from_bytes(h.digest(), "little")


def splitmix64(z: int) -> int:
    z = (z + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def hash_uniform(seed: int, x: int) -> float:
    """Deterministic uniform in [0, 1) addressed by (seed, x)."""
    z = splitmix64((seed ^ splitmix64(x & _MASK64)) & _MASK64)
    return (z >> 11) * (1.0 / (1 << 53))


def laplace_from_uniform(u: float, scale: float) -> float:
    """Inverse Laplace CDF for a centred deviate ``u`` in (-1/2, 1/2)."""
    if u == 0.0:
        return 0.0
    s = 1.0 if u > 0 else -1.0
    return -scale * s * math.log(1.0 - 2.0 * abs(u))


class NoiseSource:
    """Reproducible source of uniforms, Laplace draws and integers.

    ``counter`` counts consumed uniforms. With ``zero_noise`` set, every
    Laplace draw returns exactly 0 (and consumes nothing); uniform choices are
    still drawn so randomized selection remains seeded.
    """

    def __init__(self, seed: int = 0, zero_noise: bool = False):
        self.seed = int(seed) & _MASK64
        self.zero_noise = bool(zero_noise)
        self.counter = 0
        self._gen = np.random.Generator(np.random.Philox(key=self.seed))
        self._buf = self._gen.random(_BLOCK)
        self._pos = 0

    def __repr__(self):
        return f"NoiseSource(seed={self.seed}, counter={self.counter}, zero_noise={self.zero_noise})"

    def spawn(self, *tags) -> "NoiseSource":
        """Child source keyed by this seed and ``tags``; inherits zero-noise."""
        return NoiseSource(derive_seed(self.seed, *tags), zero_noise=self.zero_noise)

    def uniform(self) -> float:
        if self._pos == _BLOCK:
            self._buf = self._gen.random(_BLOCK)
            self._pos = 0
        u = self._buf[self._pos]
        self._pos += 1
        self.counter += 1
        return float(u)

    def uniforms(self, n: int) -> np.ndarray:
        out = np.empty(n)
        k = min(n, _BLOCK - self._pos)
        out[:k] = self._buf[self._pos:self._pos + k]
        self._pos += k
        if n > k:
            out[k:] = self._gen.random(n - k)
        self.counter += n
        return out

    def laplace(self, scale: float) -> float:
        if scale <= 0:
            raise ParameterError(f"Laplace scale must be positive, got {scale}")
        if self.zero_noise:
            return 0.0
        u = self.uniform()
        while u == 0.0:
            u = self.uniform()
        return laplace_from_uniform(u - 0.5, scale)

    def laplace_array(self, scale: float, n: int) -> np.ndarray:
        if scale <= 0:
            raise ParameterError(f"Laplace scale must be positive, got {scale}")
        if self.zero_noise:
            return np.zeros(n)
        u = self.uniforms(n)
        u[u == 0.0] = 0.5
        c = u - 0.5
        return -scale * np.sign(c) * np.log1p(-2.0 * np.abs(c))

    def bernoulli(self, p: float) -> bool:
        return self.uniform() < p

    def randbelow(self, n: int) -> int:
        """Uniform integer in [0, n)."""
        if n <= 0:
            raise ParameterError("randbelow needs n >= 1")
        return min(int(self.uniform() * n), n - 1)

    def choice(self, items):
        return items[self.randbelow(len(items))]

    def random_u64(self) -> int:
        hi = int(self.uniform() * (1 << 32))
        lo = int(self.uniform() * (1 << 32))
        return (hi << 32) | lo
