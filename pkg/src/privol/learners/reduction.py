"""Online learning by running a private experts algorithm over a sampled
finite set of hypotheses."""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from ..errors import ConfigurationError
from ..hypotheses import Hypothesis, sample_point_representation
from ..noise import NoiseSource
from .experts import SequentialOPE


def point_sampler(T: int, size: int | None = None) -> Callable[[NoiseSource], list[Hypothesis]]:
    """Sampler of ``size`` independent rate-1/T random hypotheses (default 3T)."""
    size = 3 * T if size is None else size

    def sample(rng: NoiseSource) -> list[Hypothesis]:
        return [sample_point_representation(T, rng) for _ in range(size)]

    return sample


def fixed_sampler(hypotheses: Sequence[Hypothesis]) -> Callable[[NoiseSource], list[Hypothesis]]:
    return lambda rng: list(hypotheses)


class RepresentationReductionLearner:
    """Draws a hypothesis set V once, then lets a DP experts algorithm pick
    among V with loss 1[v(x_t) != y_t]."""

    name = "reduction"

    def __init__(self, sampler, T: int, epsilon: float, rng: NoiseSource, backend=None):
        self.V = list(sampler(rng.spawn("sampler")))
        if not self.V:
            raise ConfigurationError("representation sampler returned an empty hypothesis set")
        backend = backend or SequentialOPE
        self.backend = backend(len(self.V), T, epsilon, rng.spawn("backend"))
        self.ledger = self.backend.ledger
        self.epsilon = float(epsilon)

    def predict(self):
        return self.V[self.backend.choose() - 1]

    def update(self, x, y):
        loss = np.fromiter((v(x) != y for v in self.V), dtype=float, count=len(self.V))
        self.backend.observe(loss)
