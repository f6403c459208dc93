"""Multiplicative-weights adaptive adversary against point-function learners."""

from __future__ import annotations


import numpy as np

from ..errors import ParameterError, ProtocolError
from ..game import ADAPTIVE, Adversary
from ..hypotheses import AllOne, Hypothesis, LabeledExample
from ..noise import NoiseSource


class MwAdversary(Adversary):
    """Pushes a point-function learner to reveal its guess.

    Each round presents (target, 1) with probability 1/2 and otherwise (j, 0)
    with j drawn from weights over [d] minus the target. After seeing the
    learner's h_t every weight is multiplied by e^{h_t(j)}. Weights live in
    log-space as integer counts ``log_w[j-1] = sum_r h_r(j)``.
    """

    kind = ADAPTIVE

    def __init__(self, d: int, target: int, rng: NoiseSource):
        if d < 2:
            raise ParameterError("the adversary needs d >= 2")
        if not 1 <= target <= d:
            raise ParameterError("target must lie in [d]")
        self.d, self.target, self.rng = int(d), int(target), rng
        self.log_w = np.zeros(self.d, dtype=np.int64)
        self._cdf = None
        self._awaiting_update = False
        self.emitted = 0

    @property
    def weights(self) -> np.ndarray:
        return np.exp(self.log_w.astype(float))

    def distribution(self) -> np.ndarray:
        """p(j) over [d]; zero at the target."""
        lw = self.log_w.astype(float)
        lw[self.target - 1] = -np.inf
        w = np.exp(lw - lw.max())
        return w / w.sum()

    def step(self, t: int | None = None) -> LabeledExample:
        if self._awaiting_update:
            raise ProtocolError("step called twice without an update", round_index=t)
        self._awaiting_update = True
        self.emitted += 1
        if self.rng.uniform() < 0.5:
            return LabeledExample(self.target, 1)
        if self._cdf is None:
            self._cdf = np.cumsum(self.distribution())
        u = self.rng.uniform()
        j = int(np.searchsorted(self._cdf, u * self._cdf[-1], side="right")) + 1
        j = min(j, self.d)
        if j == self.target:  # float edge on the cdf; step to a neighbour
            j = j - 1 if j > 1 else j + 1
        return LabeledExample(j, 0)

    def update(self, h: Hypothesis) -> None:
        if not self._awaiting_update:
            raise ProtocolError("update called before step in this round")
        self._awaiting_update = False
        if isinstance(h, AllOne):
            self.log_w += 1
            return
        sup = h.support(self.d)
        if sup.size == 0:
            return
        self.log_w[sup - 1] += 1
        if sup.size == 1 and sup[0] == self.target:
            return
        if sup.size >= self.d - 1 and np.all(np.isin(np.setdiff1d(np.arange(1, self.d + 1), [self.target]), sup)):
            return  # uniform shift over non-targets leaves p unchanged
        self._cdf = None

    def example(self, t, current=None):
        return self.step(t)

    def observe(self, h, example):
        self.update(h)


def mw_adversary_step(state: MwAdversary, t: int = None, rng=None) -> LabeledExample:
    if rng is not None:
        state.rng = rng
    return state.step(t)


def mw_adversary_update(state: MwAdversary, h: Hypothesis) -> None:
    state.update(h)
