"""Simple oblivious and adaptive adversaries used by experiments."""

from __future__ import annotations

import numpy as np

from ..errors import ParameterError
from ..game import ADAPTIVE, OBLIVIOUS, STRONG, Adversary, LossAdversary, ObliviousAdversary
from ..hypotheses import Hypothesis, LabeledExample, Threshold


def repeat_positive(x: int, T: int) -> ObliviousAdversary:
    """The stream (x, 1) repeated T times."""
    return ObliviousAdversary([LabeledExample(x, 1)] * T)


def labeled_stream(target: Hypothesis, xs) -> ObliviousAdversary:
    return ObliviousAdversary([LabeledExample(int(x), target(int(x))) for x in xs])


class ThresholdMidpointAdversary(Adversary):
    """Strong adaptive adversary for thresholds with a fixed target cut.

    Reads the learner's current threshold f_m and presents a point next to m
    on which f_m and the target disagree: (m + 1, 0) when m is below the
    target cut, (m, 1) when above. If f_m is the target it presents (m, 0).
    """

    kind = STRONG

    def __init__(self, d: int, target: int):
        if not 0 <= target <= d:
            raise ParameterError("target cut must lie in [0, d]")
        self.d, self.target = int(d), int(target)
        self._f = Threshold(self.target)

    def example(self, t, current=None):
        m = current.cut if isinstance(current, Threshold) else self.target
        if m < self.target:
            return LabeledExample(m + 1, 0)
        if m > self.target:
            return LabeledExample(m, 1)
        x = min(max(m, 1), self.d)
        return LabeledExample(x, self._f(x))


class ChargeCurrentExpert(LossAdversary):
    """Strong: loss 1 on the expert chosen this round unless it is the perfect one."""

    kind = STRONG

    def __init__(self, d: int, perfect: int):
        self.d, self.perfect = int(d), int(perfect)

    def losses(self, t, current=None):
        loss = np.zeros(self.d)
        if current is not None and current != self.perfect:
            loss[current - 1] = 1.0
        return loss


class ChargePreviousExpert(LossAdversary):
    """Adaptive: loss 1 on the expert the algorithm sampled last round.

    Round 1 charges the lowest-index imperfect expert. Rounds following a
    pick of the perfect expert carry zero loss.
    """

    kind = ADAPTIVE

    def __init__(self, d: int, perfect: int):
        self.d, self.perfect = int(d), int(perfect)
        self._last = 1 if perfect != 1 else (2 if d > 1 else None)

    def losses(self, t, current=None):
        loss = np.zeros(self.d)
        if self._last is not None and self._last != self.perfect:
            loss[self._last - 1] = 1.0
        return loss

    def observe(self, chosen, losses):
        self._last = chosen


class ChargeAllButPerfect(LossAdversary):
    """Oblivious: every round, loss 1 on each expert except the perfect one."""

    kind = OBLIVIOUS

    def __init__(self, d: int, perfect: int):
        self.d, self.perfect = int(d), int(perfect)
        self._loss = np.ones(self.d)
        self._loss[self.perfect - 1] = 0.0

    def losses(self, t, current=None):
        return self._loss.copy()
