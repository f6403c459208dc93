"""Summary statistics, Hoeffding half-widths and log-slope fits."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np
from scipy import stats as sps

from ..errors import ParameterError

SUMMARY_FIELDS = ("learner", "adversary", "epsilon", "delta", "T", "d",
                  "mean", "stderr", "n", "halfwidth", "range", "confidence")


def hoeffding_halfwidth(n: int, value_range: float, confidence: float = 0.95) -> float:
    """Smallest t with exp(-2 n t^2 / range^2) <= (1 - confidence) / 2."""
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    if not value_range > 0:
        raise ParameterError(f"range must be positive, got {value_range}")
    if not 0 < confidence < 1:
        raise ParameterError(f"confidence must lie in (0, 1), got {confidence}")
    return value_range * math.sqrt(math.log(2 / (1 - confidence)) / (2 * n))


@dataclass
class SummaryStats:
    learner: str
    adversary: str
    epsilon: float
    delta: float
    T: int
    d: int | None
    mean: float
    stderr: float
    n: int
    halfwidth: float
    range: float
    confidence: float

    def to_dict(self) -> dict:
        return asdict(self)


def summarize(values: Sequence[float], *, learner, adversary, epsilon, delta, T, d,
              value_range="observed", confidence=0.95) -> SummaryStats:
    """Mean, standard error and Hoeffding half-width of per-replication values.

    ``value_range="observed"`` uses max - min of the values (0 half-width when
    all replications agree); a number uses that declared range.
    """
    v = np.asarray(values, dtype=float)
    n = v.size
    if n == 0:
        raise ParameterError("no replications to summarize")
    mean = float(v.mean())
    stderr = float(v.std(ddof=1) / math.sqrt(n)) if n > 1 else 0.0
    rng_ = float(v.max() - v.min()) if value_range == "observed" else float(value_range)
    hw = hoeffding_halfwidth(n, rng_, confidence) if rng_ > 0 else 0.0
    return SummaryStats(learner, adversary, float(epsilon), float(delta), int(T),
                        None if d is None else int(d), mean, stderr, n, hw, rng_, confidence)


@dataclass
class SlopeFit:
    slope: float
    intercept: float
    r_squared: float
    weights: np.ndarray  # slope = weights @ means

    def __iter__(self):
        return iter((self.slope, self.intercept, self.r_squared))


def fit_log_slope(points: Sequence[tuple[float, float]]) -> SlopeFit:
    """Least-squares fit of mean against ln T."""
    if len(points) < 3:
        raise ParameterError(f"need >= 3 points, got {len(points)}")
    Ts = [p[0] for p in points]
    if len(set(Ts)) != len(Ts):
        raise ParameterError("duplicate T in slope fit")
    if min(Ts) <= 0:
        raise ParameterError("T must be positive")
    x = np.log(np.asarray(Ts, dtype=float))
    y = np.asarray([p[1] for p in points], dtype=float)
    res = sps.linregress(x, y)
    r2 = float(res.rvalue ** 2) if np.ptp(y) > 0 else 1.0
    xc = x - x.mean()
    return SlopeFit(float(res.slope), float(res.intercept), r2, xc / float(xc @ xc))


def slope_lower_bound(fit: SlopeFit, halfwidths: Sequence[float]) -> float:
    """Worst case slope when each mean may move by its half-width."""
    return fit.slope - float(np.abs(fit.weights) @ np.asarray(halfwidths, dtype=float))
