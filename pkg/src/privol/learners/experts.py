"""Private algorithms for prediction from experts in the realizable setting.

Experts are numbered 1..d. Algorithms expose ``choose()`` for the current
round and ``observe(loss_vector)`` afterwards.
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import ParameterError
from ..noise import NoiseSource
from ..primitives import AboveThreshold, SvtAnswer, report_noisy_max
from .base import check_eps, check_rounds, new_ledger


def sequential_threshold(T: int, epsilon: float) -> float:
    return 9 * math.log(2 * T ** 2) / epsilon


class SequentialOPE:
    """Try experts in order, abandoning one when a fresh sparse-vector
    instance says its segment loss got large.

    Segments are disjoint, so all instances share one epsilon. After the
    last expert the scan wraps around to expert 1.
    """

    name = "ope-seq"

    def __init__(self, d: int, T: int, epsilon: float, rng: NoiseSource, ledger=None, phase="main",
                 reserve=True):
        if d < 1:
            raise ParameterError("d must be >= 1")
        self.d = int(d)
        self.T = check_rounds(T)
        eps = check_eps(epsilon)
        self.epsilon = float(eps)
        self.rng = rng
        self.ledger = new_ledger(eps, ledger)
        self._component = f"{phase}:segment-svt"
        if reserve:
            self._eps = self.ledger.reserve(self._component, eps, phase)
        else:
            self._eps = self.ledger.reservations[self._component].epsilon
        self.threshold = sequential_threshold(self.T, self.epsilon)
        self.current = 1
        self.switches = []
        self._segment = 0
        self._start_segment()

    def _start_segment(self):
        self.svt = AboveThreshold(self.threshold, self.epsilon, self.rng)
        self.ledger.charge(self._component, "above_threshold", self._eps, segment=self._segment)
        self.segment_loss = 0.0

    def choose(self):
        return self.current

    def observe(self, loss):
        self.segment_loss += float(loss[self.current - 1])
        if self.svt.query(self.segment_loss) is SvtAnswer.ABOVE:
            self.current = self.current % self.d + 1
            self.switches.append(self.current)
            self._segment += 1
            self._start_segment()


def elimination_threshold(T: int, d: int, eps1: float, eps2: float) -> float:
    return 8 * math.log(2 * T ** 2) / eps1 + 3 * (math.log(d) + math.log(3 * d ** 2)) / eps2


class EliminationOPE:
    """Random play over a shrinking expert set.

    Each round picks uniformly from the active set E. A sparse-vector
    instance (eps/2) watches the largest epoch loss among active experts;
    when it fires, report-noisy-max (eps/(6d)) on cumulative losses removes
    an expert, and further noisy-max picks are removed while a noisy keep
    test says their cumulative loss is clearly positive. Then the epoch
    counters reset.
    """

    name = "ope-elimination"

    def __init__(self, d: int, T: int, epsilon: float, rng: NoiseSource, ledger=None, phase="main"):
        if d < 1:
            raise ParameterError("d must be >= 1")
        self.d = int(d)
        self.T = check_rounds(T)
        eps = check_eps(epsilon)
        self.epsilon = float(eps)
        self.rng = rng
        self.ledger = new_ledger(eps, ledger)
        self._svt_comp = f"{phase}:epoch-svt"
        self._rnm_comp = f"{phase}:elimination"
        self._eps1 = self.ledger.reserve(self._svt_comp, eps / 2, phase)
        self._eps2 = eps / (6 * self.d)
        self.ledger.reserve(self._rnm_comp, 3 * self.d * self._eps2, phase)
        self.eps1, self.eps2 = float(self._eps1), float(self._eps2)
        self.threshold = elimination_threshold(self.T, self.d, self.eps1, self.eps2)
        self.keep_cutoff = math.log(3 * self.d ** 2) / self.eps2
        self.active = list(range(1, self.d + 1))
        self.a = np.zeros(self.d)
        self.c = np.zeros(self.d)
        self.epoch = 0
        self.eliminations = []
        self._chosen = None
        self._new_epoch()

    def _new_epoch(self):
        self.svt = AboveThreshold(self.threshold, self.eps1, self.rng)
        self.ledger.charge(self._svt_comp, "above_threshold", self._eps1, segment=self.epoch)

    def choose(self):
        self._chosen = self.active[self.rng.randbelow(len(self.active))]
        return self._chosen

    def _noisy_argmax(self):
        idx = np.asarray(self.active) - 1
        pos = report_noisy_max(self.a[idx], self.eps2, self.rng)
        self.ledger.charge(self._rnm_comp, "report_noisy_max", self._eps2)
        return self.active[pos]

    def observe(self, loss):
        loss = np.asarray(loss, dtype=float)
        self.a += loss
        self.c += loss
        if len(self.active) <= 1:
            return
        idx = np.asarray(self.active) - 1
        if self.svt.query(float(self.c[idx].max())) is not SvtAnswer.ABOVE:
            return
        i = self._noisy_argmax()
        self.active.remove(i)
        removed = [i]
        while i not in self.active and len(self.active) > 1:
            i = self._noisy_argmax()
            noisy = self.a[i - 1] + self.rng.laplace(1.0 / self.eps2)
            self.ledger.charge(self._rnm_comp, "laplace", self._eps2)
            if noisy > self.keep_cutoff:
                self.active.remove(i)
                removed.append(i)
        self.eliminations.append(removed)
        self.c[:] = 0
        self.epoch += 1
        self._new_epoch()


def outer_threshold(T: int, d: int, eps_half: float) -> float:
    eps1, eps2 = eps_half / 2, eps_half / (6 * d)
    inner = (2 * math.log(3 * d ** 2) / eps2 + 3 * (math.log(d) + math.log(3 * d ** 2)) / eps2
             + 16 * math.log(2 * T ** 2) / eps1 + 1)
    return inner + 4 * math.log(T ** 2) / eps_half


class AdaptiveOPE:
    """Elimination run at eps/2 under an eps/2 guard; falls back to
    :class:`SequentialOPE` at full eps for the remaining rounds.

    The guard is a sparse-vector instance on the largest cumulative loss of an
    active expert. The fallback only sees rounds after the guard fires, so
    its budget composes in parallel with the first phase.
    """

    name = "ope-adaptive"

    def __init__(self, d: int, T: int, epsilon: float, rng: NoiseSource, ledger=None):
        if d < 1:
            raise ParameterError("d must be >= 1")
        self.d = int(d)
        self.T = check_rounds(T)
        eps = check_eps(epsilon)
        self.epsilon = float(eps)
        self.rng = rng
        self.ledger = new_ledger(eps, ledger)
        self.fallback = None
        self.guard = None
        self.switch_round = None
        self._t = 0
        if self.d == 1:
            self.inner = None
            return
        self._half = eps / 2
        self.inner = EliminationOPE(self.d, self.T, self._half, rng.spawn("elimination"),
                                    ledger=self.ledger, phase="main")
        self.ledger.reserve("main:guard-svt", self._half, "main")
        self.guard_threshold = outer_threshold(self.T, self.d, float(self._half))
        self.guard = AboveThreshold(self.guard_threshold, float(self._half), rng.spawn("guard"))
        self.ledger.charge("main:guard-svt", "above_threshold", self._half)
        self._fallback_eps = eps
        self.ledger.reserve("fallback:segment-svt", eps, "fallback")

    @property
    def active(self):
        if self.inner is None:
            return [1]
        return self.inner.active

    def choose(self):
        if self.inner is None:
            return 1
        if self.fallback is not None:
            return self.fallback.choose()
        return self.inner.choose()

    def observe(self, loss):
        self._t += 1
        if self.inner is None:
            return
        if self.fallback is not None:
            self.fallback.observe(loss)
            return
        idx = np.asarray(self.inner.active) - 1
        self.inner.observe(loss)
        if self.guard.query(float(self.inner.a[idx].max())) is SvtAnswer.ABOVE:
            self.switch_round = self._t
            self.fallback = SequentialOPE(self.d, self.T, self._fallback_eps, self.rng.spawn("fallback"),
                                          ledger=self.ledger, phase="fallback", reserve=False)


class FixedExpert:
    name = "fixed-expert"

    def __init__(self, i: int):
        self.i = int(i)
        self.ledger = None

    def choose(self):
        return self.i

    def observe(self, loss):
        pass
