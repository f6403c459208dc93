"""Private learner for a class made of one hypothesis and its complement."""

from __future__ import annotations

import math

from ..errors import ParameterError
from ..hypotheses import Complement, Hypothesis
from ..noise import NoiseSource
from .base import check_eps, check_rounds, new_ledger


def bucket_size(epsilon: float) -> int:
    return math.ceil(2 * math.log(3) / epsilon)


class ComplementaryLearner:
    """Bucketed majority vote between f1 and f2 = 1 - f1.

    Every ``s`` rounds the bucket's count of f1-errors gets Lap(1/eps) noise
    and casts one vote; the learner plays whichever hypothesis has strictly
    more votes, with ties going to f2.
    """

    name = "complementary"

    def __init__(self, f1: Hypothesis, f2: Hypothesis, T: int, epsilon: float, rng: NoiseSource,
                 ledger=None, phase="main", check_domain=None):
        if check_domain is not None:
            if any(f1(x) + f2(x) != 1 for x in check_domain):
                raise ParameterError("f1 and f2 are not complementary on the domain")
        elif not (f2 == Complement(f1) or f1 == Complement(f2)):
            raise ParameterError("f1 and f2 must be complementary")
        self.f1, self.f2 = f1, f2
        self.T = check_rounds(T)
        eps = check_eps(epsilon)
        self.epsilon = float(eps)
        self.rng = rng
        self.ledger = new_ledger(eps, ledger)
        self._eps = self.ledger.reserve("bucket-laplace", eps, phase)
        self.s = bucket_size(self.epsilon)
        self.c1 = self.c2 = 0
        self.bucket_err = 0
        self._t = 0

    def predict(self):
        return self.f1 if self.c1 > self.c2 else self.f2

    def update(self, x, y):
        self._t += 1
        if self.f1(x) != y:
            self.bucket_err += 1
        if self._t % self.s == 0:
            noisy = self.bucket_err + self.rng.laplace(1.0 / self.epsilon)
            self.ledger.charge("bucket-laplace", "laplace", self._eps, segment=self._t // self.s)
            if noisy < self.s / 2:
                self.c1 += 1
            else:
                self.c2 += 1
            self.bucket_err = 0
