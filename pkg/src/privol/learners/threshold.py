"""Private binary search over threshold functions."""

from __future__ import annotations

import math

from ..hypotheses import Threshold
from ..noise import NoiseSource
from ..primitives import AboveThreshold, SvtAnswer
from .base import check_eps, check_rounds, new_ledger


def epoch_threshold(T: int, eps_half: float) -> float:
    return 16 * math.log(4 * T ** 2) / eps_half


class ThresholdLearner:
    """Pure-DP learner for thresholds over [d].

    Plays f_mid for the current search interval [l, r] and counts its mistakes
    by label. When the noisy mistake total crosses a noisy threshold the
    interval moves right if label-0 mistakes dominate (noisily) and left
    otherwise; counters and threshold are then refreshed, so every epoch's
    mechanisms see disjoint data. A move that would make r < l is clamped.
    """

    name = "threshold"

    def __init__(self, d: int, T: int, epsilon: float, rng: NoiseSource, ledger=None, phase="main"):
        self.d = int(d)
        self.T = check_rounds(T)
        eps = check_eps(epsilon)
        self.epsilon = float(eps)
        self.rng = rng
        self.ledger = new_ledger(eps, ledger)
        self._half = self.ledger.reserve("epoch-svt", eps / 2, phase)
        self.ledger.reserve("epoch-compare", eps / 2, phase)
        self.eps_half = float(self._half)
        self.threshold = epoch_threshold(self.T, self.eps_half)
        self.l, self.r = 0, self.d
        self.mid = (self.l + self.r) // 2
        self.c0 = self.c1 = 0
        self.epoch = 0
        self.moves = []
        self._new_epoch()

    def _new_epoch(self):
        self.svt = AboveThreshold(self.threshold, self.eps_half, self.rng)
        self.ledger.charge("epoch-svt", "above_threshold", self._half, segment=self.epoch)
        self._h = Threshold(self.mid)

    def predict(self):
        return self._h

    def update(self, x, y):
        if self._h(x) != y:
            if y == 0:
                self.c0 += 1
            else:
                self.c1 += 1
        if self.l < self.r and self.svt.query(self.c0 + self.c1) is SvtAnswer.ABOVE:
            go_right = self.c0 + self.rng.laplace(1.0 / self.eps_half) > self.c1
            self.ledger.charge("epoch-compare", "laplace", self._half, segment=self.epoch)
            if go_right:
                self.l = self.mid + 1
            else:
                self.r = max(self.mid - 1, self.l)
            self.moves.append("right" if go_right else "left")
            self.mid = (self.l + self.r) // 2
            self.c0 = self.c1 = 0
            self.epoch += 1
            self._new_epoch()

    @property
    def hypothesis(self):
        return self._h
