"""Packing streams and the smoothed binary-search distinguisher.

The construction needs probabilities Pr[A(S)_t(u1) = f1(u1)] for streams S
built on the fly. They come from a *learner oracle*: either an exact mock
profile (used to check the construction logic) or a Monte Carlo estimate over
independent seeded learner runs (a heuristic attack on real learners).

Oracles hand out *probes*: a probe follows one stream, reporting the
agreement probability for the next round and absorbing examples one by one.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

import numpy as np

from ..errors import ConstructionFailed, ParameterError
from ..hypotheses import Hypothesis, LabeledExample
from ..noise import NoiseSource, derive_seed

INSERT_AT = 1 / 3
KEEP_AT = 1 / 2

SEARCH_COPIES = 360
SEARCH_CUTOFF = 150
SEARCH_BIAS = 3 / 4


# -- oracles ---------------------------------------------------------------

class ExactOracle:
    """Mock oracle. ``prob_one(history, u)`` is Pr[h_next(u) = 1]."""

    def __init__(self, prob_one: Callable[[tuple, int], float]):
        self.prob_one = prob_one

    def start(self, prefix: Sequence[LabeledExample] = (), tag=None) -> "_ExactProbe":
        return _ExactProbe(self, prefix)


class _ExactProbe:
    def __init__(self, oracle, prefix):
        self.oracle = oracle
        self.history = list(prefix)

    def agreement(self, u: int, label: int) -> float:
        p = float(self.oracle.prob_one(tuple(self.history), u))
        if not 0.0 <= p <= 1.0:
            raise ParameterError(f"mock profile returned {p}, outside [0, 1]")
        return p if label == 1 else 1.0 - p

    def feed(self, ex: LabeledExample) -> None:
        self.history.append(ex)


def constant_profile(p: float) -> ExactOracle:
    return ExactOracle(lambda history, u: p)


def memorizing_profile(p: float = 0.5) -> ExactOracle:
    """Pr[h(u)=1] = p until u is seen labeled, then the last label seen."""

    def prob_one(history, u):
        for x, y in reversed(history):
            if x == u:
                return float(y)
        return p

    return ExactOracle(prob_one)


def decaying_profile(rate: float, start: float = 0.5, window: int | None = None) -> ExactOracle:
    """Pr[h(u)=1] moves from ``start`` towards each label seen at u by a factor e^{-rate}.

    With ``window`` set only the last ``window`` examples count, so the
    learner forgets and the construction needs more insertions.
    """

    def prob_one(history, u):
        hist = history if window is None else history[-window:]
        ones = sum(1 for x, y in hist if x == u and y == 1)
        zeros = sum(1 for x, y in hist if x == u and y == 0)
        p1 = 1.0 - (1.0 - start) * math.exp(-rate * ones)
        return p1 * math.exp(-rate * zeros)

    return ExactOracle(prob_one)


class MonteCarloOracle:
    """Estimates agreement probabilities from ``runs`` independent learners.

    ``learner_factory(rng)`` builds a fresh learner. Each probe uses its own
    runs, seeded from (seed, tag, run index).
    """

    def __init__(self, learner_factory, runs: int = 200, seed: int = 0):
        if runs < 1:
            raise ParameterError("runs must be >= 1")
        self.learner_factory = learner_factory
        self.runs = int(runs)
        self.seed = int(seed)

    def start(self, prefix: Sequence[LabeledExample] = (), tag=None) -> "_McProbe":
        learners = [self.learner_factory(NoiseSource(derive_seed(self.seed, "probe", repr(tag), w)))
                    for w in range(self.runs)]
        probe = _McProbe(learners)
        for ex in prefix:
            probe.feed(ex)
        return probe


class _McProbe:
    def __init__(self, learners):
        self.learners = learners

    def agreement(self, u, label):
        return sum(1 for L in self.learners if L.predict()(u) == label) / len(self.learners)

    def feed(self, ex):
        for L in self.learners:
            L.update(ex.x, ex.y)


def estimate_prediction_probability(learner_factory, stream: Sequence[LabeledExample], t: int,
                                    u1: int, label: int, runs: int, rng: NoiseSource) -> float:
    """Fraction of ``runs`` seeded learners whose h_t(u1) equals ``label`` on ``stream``."""
    if runs < 1:
        raise ParameterError("runs must be >= 1")
    hits = 0
    for w in range(runs):
        L = learner_factory(rng.spawn("estimate", w))
        for x, y in stream[:t - 1]:
            L.update(x, y)
        hits += L.predict()(u1) == label
    return hits / runs


# -- construction ----------------------------------------------------------

@dataclass
class PackingOutput:
    """Either a single ``witness`` stream or a ``family`` S_1..S_m with t_1..t_{m-1}."""

    kind: str
    streams: list
    timesteps: list
    T: int
    k: int
    dummy: tuple
    insert: tuple
    ref_label: int
    witness_index: int | None = None
    kept_rounds: list | None = None
    swapped: bool = False
    profiles: list = field(default_factory=list, repr=False)

    @property
    def m(self) -> int:
        return len(self.streams)

    @property
    def u1(self) -> int:
        return self.insert[0]

    def insertions(self, i: int) -> list[int]:
        """1-based rounds where stream i (1-based) differs from the dummy stream."""
        return [t for t, ex in enumerate(self.streams[i - 1], 1) if tuple(ex) == tuple(self.insert)]

    def to_json(self) -> str:
        d = asdict(self)
        d.pop("profiles")
        d["streams"] = [[list(ex) for ex in s] for s in self.streams]
        return json.dumps(d, indent=1)

    @classmethod
    def from_json(cls, text: str) -> "PackingOutput":
        d = json.loads(text)
        d["streams"] = [[LabeledExample(*ex) for ex in s] for s in d["streams"]]
        d["dummy"] = tuple(d["dummy"])
        d["insert"] = tuple(d["insert"])
        return cls(**d)


def wlog_filter(oracle, T: int, f1: Hypothesis, f2: Hypothesis, u0: int, u1: int, prefix=()):
    """Orient the pair so that Pr[A(S_0)_t(u1) = f1(u1)] >= 1/2 on at least T/2 rounds.

    Returns (f1, f2, kept_rounds, swapped).
    """
    probe = oracle.start(prefix, tag="dummy")
    dummy = LabeledExample(u0, f1(u0))
    p = np.empty(T)
    for t in range(T):
        p[t] = probe.agreement(u1, f1(u1))
        probe.feed(dummy)
    keep1 = [t + 1 for t in range(T) if p[t] >= KEEP_AT]
    if len(keep1) >= T / 2:
        return f1, f2, keep1, False
    keep2 = [t + 1 for t in range(T) if 1.0 - p[t] >= KEEP_AT]
    return f2, f1, keep2, True


def build_packing_streams(oracle, T: int, k: int, f1: Hypothesis, f2: Hypothesis, u0: int, u1: int,
                          *, prefix: Sequence[LabeledExample] = (), kept_rounds=None,
                          slack: float = 0.0, swapped: bool = False) -> PackingOutput:
    """Build S_1..S_m from the dummy stream by inserting (u1, f2(u1)) wherever the
    learner still agrees with f1 at u1 with probability >= 1/3.

    Returns a witness as soon as one stream needs more than ``k`` insertions.
    ``kept_rounds`` restricts insertions and timestep search (see
    :func:`wlog_filter`); ``slack`` loosens the 1/3 search cutoff.
    """
    if not 1 <= k < T:
        raise ParameterError(f"need 1 <= k < T, got k={k}, T={T}")
    if f1(u0) != f2(u0) or f1(u1) == f2(u1):
        raise ParameterError("(f1, f2, u0, u1) is not a distinguishing tuple")
    dummy = LabeledExample(u0, f1(u0))
    insert = LabeledExample(u1, f2(u1))
    ref = f1(u1)
    kept = list(range(1, T + 1)) if kept_rounds is None else sorted(kept_rounds)
    if not kept:
        raise ParameterError("no rounds left to insert into")
    kept_set = set(kept)
    m = math.ceil(T / k)
    streams, timesteps, profiles = [], [], []

    def output(kind, witness_index=None):
        return PackingOutput(kind, streams, timesteps, T, k, tuple(dummy), tuple(insert), ref,
                             witness_index, kept, swapped, profiles)

    for i in range(1, m + 1):
        if i == 1:
            start = kept[0]
        else:
            start = next((t for t in kept
                          if all(prof[t - 1] < INSERT_AT + slack for prof in profiles)), None)
            if start is None:
                raise ConstructionFailed(f"no distinguishing timestep for stream {i}",
                                         partial=output("family"))
            timesteps.append(start)
        s = [dummy] * T
        prof = np.empty(T)
        probe = oracle.start(prefix, tag=("stream", i))
        for t in range(1, T + 1):
            p = probe.agreement(u1, ref)
            prof[t - 1] = p
            if t >= start and t in kept_set and p >= INSERT_AT:
                s[t - 1] = insert
            probe.feed(s[t - 1])
        streams.append(s)
        profiles.append(prof)
        if sum(1 for ex in s if ex == insert) > k:
            return output("witness", witness_index=i)
    return output("family")


def family_clause_violations(out: PackingOutput, oracle, prefix=()) -> list[tuple]:
    """Recheck, with fresh probes, that Pr[A(S_i)_{t_j}] < 1/3 for j >= i and >= 1/2 for j < i.

    Returns (i, j, probability, clause) for every violation.
    """
    bad = []
    u1, ref = out.u1, out.ref_label
    for i in range(1, out.m + 1):
        probe = oracle.start(prefix, tag=("check", i))
        want = {t: j for j, t in enumerate(out.timesteps, 1)}
        probs = {}
        for t in range(1, out.T + 1):
            if t in want:
                probs[t] = probe.agreement(u1, ref)
            probe.feed(LabeledExample(*out.streams[i - 1][t - 1]))
        for j, t in enumerate(out.timesteps, 1):
            p = probs[t]
            if j >= i and not p < INSERT_AT:
                bad.append((i, j, p, "below-1/3"))
            if j < i and not p >= KEEP_AT:
                bad.append((i, j, p, "at-least-1/2"))
    return bad


# -- distinguisher ---------------------------------------------------------

def smoothed_walk(below: Callable[[int], bool], m: int, rng: NoiseSource,
                  bias: float = SEARCH_BIAS) -> int:
    """Biased binary search over [1, m]; ``below(mid)`` says "look left"."""
    l, r = 1, m
    while l < r:
        mid = (l + r) // 2
        toward = rng.uniform() < bias
        if below(mid) == toward:
            r = mid
        else:
            l = mid + 1
    return l


def smoothed_search_distribution(below: Callable[[int], bool], m: int,
                                 bias: float = SEARCH_BIAS) -> dict[int, float]:
    """Exact output distribution of :func:`smoothed_walk` by enumerating every path."""
    out: dict[int, float] = {}

    def walk(l, r, p):
        if l >= r:
            out[l] = out.get(l, 0.0) + p
            return
        mid = (l + r) // 2
        left_p = bias if below(mid) else 1.0 - bias
        walk(l, mid, p * left_p)
        walk(mid + 1, r, p * (1.0 - left_p))

    walk(1, m, 1.0)
    return out


def search_success_bound(m: int) -> float:
    return (2 / 3) * (2 * m) ** -0.545


def smoothed_binary_search(learner_factory, streams: Sequence, timesteps: Sequence[int],
                           S: Sequence[LabeledExample], f1: Hypothesis | int, u1: int,
                           rng: NoiseSource, copies: int = SEARCH_COPIES,
                           cutoff: int = SEARCH_CUTOFF) -> int:
    """Guess which S_i the stream ``S`` is, from ``copies`` runs of the learner on it."""
    m = len(streams)
    if m < 1:
        raise ParameterError("need at least one stream")
    if m == 1:
        return 1
    if list(timesteps) != sorted(timesteps) or len(timesteps) != m - 1:
        raise ParameterError("need m - 1 ascending timesteps")
    label = f1(u1) if callable(f1) else int(f1)
    need = {}
    for j, t in enumerate(timesteps, 1):
        need.setdefault(t, []).append(j)
    counts = np.zeros(m, dtype=np.int64)  # counts[j] for j in 1..m-1
    horizon = max(timesteps)
    for w in range(copies):
        L = learner_factory(rng.spawn("copy", w))
        for t in range(1, horizon + 1):
            if t in need and L.predict()(u1) == label:
                for j in need[t]:
                    counts[j] += 1
            x, y = S[t - 1]
            L.update(x, y)
    walker = rng.spawn("walk")
    return smoothed_walk(lambda mid: counts[mid] < cutoff, m, walker)
