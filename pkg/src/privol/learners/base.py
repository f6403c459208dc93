"""Non-private reference learners and small shared helpers."""

from __future__ import annotations

from fractions import Fraction

from ..errors import ParameterError
from ..hypotheses import ZERO, Hypothesis, Point
from ..primitives import PrivacyLedger


def check_eps(epsilon) -> Fraction:
    if not epsilon > 0:
        raise ParameterError(f"epsilon must be positive, got {epsilon}")
    return Fraction(epsilon)


def check_rounds(T: int) -> int:
    if T < 1:
        raise ParameterError(f"T must be >= 1, got {T}")
    return int(T)


class ConstantLearner:
    """Outputs the same hypothesis every round."""

    name = "constant"

    def __init__(self, h: Hypothesis):
        self.h = h
        self.ledger = None

    def predict(self):
        return self.h

    def update(self, x, y):
        pass


class FirstPositiveLearner:
    """Non-private point learner: all-zero until the first positive, then that point."""

    name = "first-positive"

    def __init__(self):
        self.h = ZERO
        self.ledger = None

    def predict(self):
        return self.h

    def update(self, x, y):
        if y == 1 and self.h is ZERO:
            self.h = Point(x)


def new_ledger(epsilon, ledger: PrivacyLedger | None) -> PrivacyLedger:
    return PrivacyLedger(Fraction(epsilon)) if ledger is None else ledger
