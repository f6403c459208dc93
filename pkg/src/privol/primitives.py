"""Differential-privacy building blocks.

Laplace noise, the Laplace mechanism, AboveThreshold (sparse vector),
report-noisy-max, basic composition and group privacy, plus the
:class:`PrivacyLedger` learners use to log every mechanism they invoke.
"""

from __future__ import annotations

import enum
import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import ParameterError, StateError
from .noise import NoiseSource

__all__ = [
    "PrivacyBudget",
    "compose_budgets",
    "group_privacy_bound",
    "sample_laplace",
    "laplace_mechanism",
    "SvtAnswer",
    "AboveThreshold",
    "svt_init",
    "svt_query",
    "report_noisy_max",
    "PrivacyLedger",
    "Charge",
]


@dataclass(frozen=True)
class PrivacyBudget:
    """An (epsilon, delta) pair. ``epsilon`` may be a Fraction for exact sums."""

    epsilon: float | Fraction
    delta: float | Fraction = 0

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ParameterError(f"epsilon must be positive, got {self.epsilon}")
        if not 0 <= self.delta < 1:
            raise ParameterError(f"delta must lie in [0, 1), got {self.delta}")

    def __add__(self, other: "PrivacyBudget") -> "PrivacyBudget":
        return PrivacyBudget(self.epsilon + other.epsilon, self.delta + other.delta)


def compose_budgets(budgets: Iterable[PrivacyBudget]) -> PrivacyBudget:
    """Basic composition: epsilons and deltas add."""
    budgets = list(budgets)
    if not budgets:
        raise ParameterError("compose_budgets needs at least one budget")
    eps = sum((b.epsilon for b in budgets[1:]), budgets[0].epsilon)
    delta = sum((b.delta for b in budgets[1:]), budgets[0].delta)
    return PrivacyBudget(eps, delta)


def group_privacy_bound(budget: PrivacyBudget, k: int) -> tuple[float, float]:
    """Multiplicative and additive slack for inputs differing in ``k`` entries."""
    if k < 1:
        raise ParameterError(f"group size must be >= 1, got {k}")
    eps = float(budget.epsilon)
    mult = math.exp(k * eps)
    if budget.delta == 0:
        return mult, 0.0
    # (e^{k eps} - 1) / (e^eps - 1) = sum_{r<k} e^{r eps}
    additive = float(budget.delta) * math.expm1(k * eps) / math.expm1(eps)
    return mult, additive


def sample_laplace(scale: float, rng: NoiseSource) -> float:
    """One draw from Lap(scale); exactly 0 in zero-noise mode."""
    if not scale > 0:
        raise ParameterError(f"Laplace scale must be positive, got {scale}")
    return rng.laplace(scale)


def laplace_mechanism(value: float, sensitivity: float, epsilon: float, rng: NoiseSource) -> float:
    if not sensitivity > 0:
        raise ParameterError(f"sensitivity must be positive, got {sensitivity}")
    if not epsilon > 0:
        raise ParameterError(f"epsilon must be positive, got {epsilon}")
    return value + rng.laplace(sensitivity / epsilon)


class SvtAnswer(enum.Enum):
    BELOW = "below"
    ABOVE = "above"


class AboveThreshold:
    """Sparse vector technique over sensitivity-1 queries.

    The noisy threshold is drawn once at construction with scale 2/eps; each
    query adds fresh Lap(4/eps) and the instance halts on the first noisy
    value at or above the noisy threshold.
    """

    __slots__ = ("threshold", "epsilon", "noisy_threshold", "halted", "queries", "_rng", "_qscale")

    def __init__(self, threshold: float, epsilon: float, rng: NoiseSource):
        if not epsilon > 0:
            raise ParameterError(f"epsilon must be positive, got {epsilon}")
        self.threshold = float(threshold)
        self.epsilon = float(epsilon)
        self._rng = rng
        self._qscale = 4.0 / self.epsilon
        self.noisy_threshold = self.threshold + rng.laplace(2.0 / self.epsilon)
        self.halted = False
        self.queries = 0

    def query(self, value: float, rng: NoiseSource | None = None) -> SvtAnswer:
        if self.halted:
            raise StateError("AboveThreshold instance has already halted")
        self.queries += 1
        noisy = value + (rng or self._rng).laplace(self._qscale)
        if noisy >= self.noisy_threshold:
            self.halted = True
            return SvtAnswer.ABOVE
        return SvtAnswer.BELOW

    def __repr__(self):
        return (f"AboveThreshold(L={self.threshold:.4g}, L_hat={self.noisy_threshold:.4g}, "
                f"eps={self.epsilon:.4g}, halted={self.halted})")


def svt_init(threshold: float, epsilon: float, rng: NoiseSource) -> AboveThreshold:
    return AboveThreshold(threshold, epsilon, rng)


def svt_query(inst: AboveThreshold, query_value: float, rng: NoiseSource | None = None) -> SvtAnswer:
    return inst.query(query_value, rng)


def report_noisy_max(values: Sequence[float], epsilon: float, rng: NoiseSource) -> int:
    """Index of the largest value after adding i.i.d. Lap(2/eps) noise.

    Ties go to the lowest index (``numpy.argmax`` semantics).
    """
    if not epsilon > 0:
        raise ParameterError(f"epsilon must be positive, got {epsilon}")
    v = np.asarray(values, dtype=float)
    if v.size == 0:
        raise ParameterError("report_noisy_max needs a non-empty list")
    if rng.zero_noise:
        return int(np.argmax(v))
    return int(np.argmax(v + rng.laplace_array(2.0 / epsilon, v.size)))


@dataclass(frozen=True)
class Charge:
    component: str
    mechanism: str
    epsilon: Fraction
    segment: int
    phase: str


@dataclass
class _Reservation:
    epsilon: Fraction
    phase: str


@dataclass
class PrivacyLedger:
    """Declared privacy budget of a learner plus a log of what it spent.

    A learner *reserves* one budget per component. Components in the same
    phase compose by summation; phases act on disjoint time ranges of the
    stream, so the declared total is the max over phases. Within a component,
    charges carry a ``segment`` id: different segments touch disjoint data and
    compose in parallel (max), charges in the same segment add up and may not
    exceed the reservation.
    """

    epsilon: Fraction
    reservations: dict = field(default_factory=dict)
    charges: list = field(default_factory=list)

    def __post_init__(self):
        self.epsilon = Fraction(self.epsilon)
        self._spent = defaultdict(Fraction)

    def reserve(self, component: str, epsilon, phase: str = "main") -> Fraction:
        if component in self.reservations:
            raise StateError(f"component {component!r} already reserved")
        eps = Fraction(epsilon)
        self.reservations[component] = _Reservation(eps, phase)
        return eps

    def charge(self, component: str, mechanism: str, epsilon, segment: int = 0) -> None:
        res = self.reservations.get(component)
        if res is None:
            raise StateError(f"charge to unreserved component {component!r}")
        eps = Fraction(epsilon)
        key = (component, segment)
        if self._spent[key] + eps > res.epsilon:
            raise StateError(
                f"component {component!r} segment {segment} would exceed its reservation "
                f"({self._spent[key] + eps} > {res.epsilon})")
        self._spent[key] += eps
        self.charges.append(Charge(component, mechanism, eps, segment, res.phase))

    def declared(self) -> Fraction:
        per_phase = defaultdict(Fraction)
        for res in self.reservations.values():
            per_phase[res.phase] += res.epsilon
        return max(per_phase.values(), default=Fraction(0))

    def spent(self) -> Fraction:
        worst = defaultdict(Fraction)
        for (component, _), eps in self._spent.items():
            worst[component] = max(worst[component], eps)
        per_phase = defaultdict(Fraction)
        for component, eps in worst.items():
            per_phase[self.reservations[component].phase] += eps
        return max(per_phase.values(), default=Fraction(0))

    def budget(self) -> PrivacyBudget:
        return PrivacyBudget(self.declared(), 0)

    def mechanisms(self) -> list[str]:
        return [c.mechanism for c in self.charges]
