"""Private learners for point functions."""

from __future__ import annotations

import math
from collections import Counter

import numpy as np

from ..hypotheses import ZERO, Point, sample_point_representation
from ..noise import NoiseSource
from ..primitives import AboveThreshold, SvtAnswer, report_noisy_max
from .base import check_eps, check_rounds, new_ledger

MONITOR, SAMPLING, COMMITTED = "monitor", "sampling", "committed"


def point_n_threshold(T: int, eps_half: float) -> float:
    return 20 * math.log(12 * T ** 3) / eps_half + 8 * math.log(6 * T ** 2) / eps_half


def point_n_acceptance(T: int, eps_half: float) -> float:
    return 12 * math.log(12 * T ** 3) / eps_half


class PointNLearner:
    """Pure-DP learner for point functions over the positive integers.

    Outputs all-zero while a sparse-vector instance watches the running count
    of positive labels. Once it fires, random hypotheses with
    Pr[h(x)=1] = 1/T are drawn until one passes a second noisy test of its
    error on past positives; that hypothesis is kept for the rest of the game.
    Sampling is capped at 3T^2 draws, after which the learner stays all-zero.
    """

    name = "point-n"

    def __init__(self, T: int, epsilon: float, rng: NoiseSource, ledger=None, phase="main"):
        self.T = check_rounds(T)
        eps = check_eps(epsilon)
        self.epsilon = float(eps)
        self.rng = rng
        self.ledger = new_ledger(eps, ledger)
        half = self.ledger.reserve("monitor-svt", eps / 2, phase)
        self.ledger.reserve("sampling-svt", eps / 2, phase)
        self._half = half
        self.eps_half = float(half)
        self.threshold = point_n_threshold(self.T, self.eps_half)
        self.svt = AboveThreshold(self.threshold, self.eps_half, rng)
        self.ledger.charge("monitor-svt", "above_threshold", half)
        self.phase = MONITOR
        self.committed_h = None
        self.r_hat = None
        self.halt_round = None
        self.samples_drawn = 0
        self.cap = 3 * self.T ** 2
        self._t = 0
        self._positives = Counter()
        self._npos = 0
        self._h = ZERO

    def predict(self):
        return self._h

    def update(self, x, y):
        self._t += 1
        if y == 1:
            self._positives[x] += 1
            self._npos += 1
        if self.phase != MONITOR:
            return
        if self.svt.query(self._npos) is SvtAnswer.ABOVE:
            self.halt_round = self._t
            self.phase = SAMPLING
            self._sample()

    def _sample(self):
        # "err + Lap <= R_hat" is run as AboveThreshold on the negated error.
        svt = AboveThreshold(-point_n_acceptance(self.T, self.eps_half), self.eps_half, self.rng)
        self.ledger.charge("sampling-svt", "above_threshold", self._half)
        self.r_hat = -svt.noisy_threshold
        pos = list(self._positives.items())
        for _ in range(self.cap):
            h = sample_point_representation(self.T, self.rng)
            self.samples_drawn += 1
            err = sum(c for x, c in pos if h(x) == 0)
            if svt.query(-err) is SvtAnswer.ABOVE:
                self.committed_h = h
                self._h = h
                self.phase = COMMITTED
                return
        self.phase = COMMITTED
        self.committed_h = ZERO


def point_d_threshold(d: int, T: int, eps_half: float) -> float:
    return 3 * (math.log(d) + math.log(2 * T)) / eps_half + 8 * math.log(4 * T ** 2) / eps_half


class PointDLearner:
    """Pure-DP learner for point functions over [d], robust to strong adversaries.

    All-zero plus a sparse-vector monitor on the mistake count; when it fires,
    report-noisy-max over the per-point positive counts picks the point to
    commit to.
    """

    name = "point-d"

    def __init__(self, d: int, T: int, epsilon: float, rng: NoiseSource, ledger=None, phase="main"):
        self.d = int(d)
        self.T = check_rounds(T)
        eps = check_eps(epsilon)
        self.epsilon = float(eps)
        self.rng = rng
        self.ledger = new_ledger(eps, ledger)
        self._half = self.ledger.reserve("monitor-svt", eps / 2, phase)
        self.ledger.reserve("select-rnm", eps / 2, phase)
        self.eps_half = float(self._half)
        self.threshold = point_d_threshold(self.d, self.T, self.eps_half)
        self.svt = AboveThreshold(self.threshold, self.eps_half, rng)
        self.ledger.charge("monitor-svt", "above_threshold", self._half)
        self.phase = MONITOR
        self.committed = None
        self.halt_round = None
        self._t = 0
        self._mistakes = 0
        self._positive_points = []
        self._h = ZERO

    def predict(self):
        return self._h

    def update(self, x, y):
        self._t += 1
        if self.phase != MONITOR:
            return
        if self._h(x) != y:
            self._mistakes += 1
        if y == 1 and 1 <= x <= self.d:
            self._positive_points.append(x)
        if self.svt.query(self._mistakes) is SvtAnswer.ABOVE:
            self.halt_round = self._t
            counts = np.bincount(np.asarray(self._positive_points, dtype=np.int64),
                                 minlength=self.d + 1)[1:]
            i = report_noisy_max(counts, self.eps_half, self.rng) + 1
            self.ledger.charge("select-rnm", "report_noisy_max", self._half)
            self.committed = i
            self._h = Point(i)
            self.phase = COMMITTED
