"""The sequential learner-versus-adversary game and its bookkeeping.

Each round the learner commits to ``h_t`` first. An oblivious adversary then
reads the next entry of its fixed stream, an adaptive adversary chooses from
``h_1..h_{t-1}`` and past examples, and a strong adaptive adversary is also
handed ``h_t``. After the learner ingests the example, the adversary observes
``h_t``.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import NamedTuple, Protocol, Sequence

import numpy as np

from .errors import ParameterError, ProtocolError
from .hypotheses import (Hypothesis, LabeledExample, RealizabilityTracker,
                         best_in_hindsight_errors)

OBLIVIOUS = "oblivious"
ADAPTIVE = "adaptive"
STRONG = "strong-adaptive"
ADVERSARY_KINDS = (OBLIVIOUS, ADAPTIVE, STRONG)

TRANSCRIPT_FIELDS = ("rep", "t", "x", "y", "pred", "mistake", "hypothesis")


class Learner(Protocol):
    def predict(self) -> Hypothesis: ...

    def update(self, x: int, y: int) -> None: ...


class Adversary:
    """Base adversary. ``example`` gets ``current`` only for strong adversaries."""

    kind = ADAPTIVE

    def example(self, t: int, current: Hypothesis | None = None) -> LabeledExample:
        raise NotImplementedError

    def observe(self, h: Hypothesis, example: LabeledExample) -> None:
        pass


class ObliviousAdversary(Adversary):
    kind = OBLIVIOUS

    def __init__(self, stream: Sequence[LabeledExample]):
        self.stream = [LabeledExample(int(x), int(y)) for x, y in stream]

    def example(self, t, current=None):
        return self.stream[t - 1]


class Round(NamedTuple):
    x: int
    y: int
    prediction: int
    hypothesis: Hypothesis
    mistake: int


@dataclass
class Transcript:
    """Column-stored record of a game."""

    xs: list = field(default_factory=list)
    ys: list = field(default_factory=list)
    preds: list = field(default_factory=list)
    hyps: list = field(default_factory=list)

    def append(self, x, y, pred, h):
        self.xs.append(x)
        self.ys.append(y)
        self.preds.append(pred)
        self.hyps.append(h)

    def __len__(self):
        return len(self.xs)

    @property
    def rounds(self) -> list[Round]:
        return [Round(x, y, p, h, int(p != y))
                for x, y, p, h in zip(self.xs, self.ys, self.preds, self.hyps)]

    @property
    def examples(self) -> list[LabeledExample]:
        return [LabeledExample(x, y) for x, y in zip(self.xs, self.ys)]

    def mistakes(self) -> int:
        return sum(int(p != y) for p, y in zip(self.preds, self.ys))

    def rows(self, rep: int = 0):
        for t, (x, y, p, h) in enumerate(zip(self.xs, self.ys, self.preds, self.hyps), 1):
            yield (rep, t, x, y, p, int(p != y), h.describe())


@dataclass
class OpeTranscript:
    chosen: list = field(default_factory=list)
    losses: list = field(default_factory=list)

    def __len__(self):
        return len(self.chosen)

    def rows(self, rep: int = 0):
        # OPE rounds reuse the transcript columns: x = pred = chosen expert,
        # y = mistake = loss charged to it.
        for t, (i, loss) in enumerate(zip(self.chosen, self.losses), 1):
            li = float(loss[i - 1])
            yield (rep, t, i, li, i, li, f"expert({i})")


@dataclass
class GameResult:
    mistake_count: float
    regret: float | None
    transcript: Transcript | OpeTranscript | None
    seed: int | None = None
    rounds: int = 0

    def summary(self, **meta) -> dict:
        out = dict(meta)
        out.update(seed=self.seed, T=self.rounds, mistakes=self.mistake_count, regret=self.regret)
        return out


def run_game(learner, adversary: Adversary, T: int, *, hclass=None, realizable: bool = False,
             record: bool = True, seed: int | None = None) -> GameResult:
    """Play ``T`` rounds. With ``realizable`` set, ``hclass`` must stay consistent."""
    if T < 1:
        raise ParameterError(f"T must be >= 1, got {T}")
    kind = getattr(adversary, "kind", ADAPTIVE)
    if kind not in ADVERSARY_KINDS:
        raise ParameterError(f"unknown adversary kind {kind!r}")
    if kind == OBLIVIOUS and hasattr(adversary, "stream") and len(adversary.stream) != T:
        raise ParameterError(f"oblivious stream has length {len(adversary.stream)}, expected {T}")
    tracker = None
    if realizable:
        if hclass is None:
            raise ParameterError("realizable mode needs a hypothesis class")
        tracker = RealizabilityTracker(hclass)
    strong = kind == STRONG
    transcript = Transcript() if record else None
    mistakes = 0
    for t in range(1, T + 1):
        h = learner.predict()
        ex = adversary.example(t, h) if strong else adversary.example(t)
        x, y = ex
        if tracker is not None and not tracker.add(x, y):
            raise ProtocolError(f"round {t}: example ({x}, {y}) breaks realizability", round_index=t)
        pred = h(x)
        if pred != y:
            mistakes += 1
        if transcript is not None:
            transcript.append(x, y, pred, h)
        learner.update(x, y)
        adversary.observe(h, ex)
    regret = None
    if transcript is not None and hclass is not None:
        regret = compute_regret(transcript, hclass)
    return GameResult(mistakes, regret, transcript, seed, T)


def compute_regret(transcript: Transcript, cls) -> int:
    """Mistakes minus the best fixed hypothesis' errors in hindsight."""
    if len(transcript) == 0:
        return 0
    return transcript.mistakes() - best_in_hindsight_errors(transcript.examples, cls)


class LossAdversary:
    """Adversary for prediction from experts; ``losses`` returns a vector in [0,1]^d."""

    kind = ADAPTIVE
    perfect: int | None = None

    def losses(self, t: int, current: int | None = None) -> np.ndarray:
        raise NotImplementedError

    def observe(self, chosen: int, losses: np.ndarray) -> None:
        pass


def run_ope_game(algorithm, adversary: LossAdversary, d: int, T: int, *, realizable: bool = True,
                 record: bool = True, seed: int | None = None) -> GameResult:
    """Experts game over [d]; expert indices are 1-based."""
    if d < 1 or T < 1:
        raise ParameterError("d and T must be >= 1")
    strong = getattr(adversary, "kind", ADAPTIVE) == STRONG
    transcript = OpeTranscript() if record else None
    cum = np.zeros(d)
    total = 0.0
    zero_loss = np.ones(d, dtype=bool)
    for t in range(1, T + 1):
        i = algorithm.choose()
        loss = np.asarray(adversary.losses(t, i) if strong else adversary.losses(t), dtype=float)
        if loss.shape != (d,):
            raise ProtocolError(f"round {t}: loss vector has shape {loss.shape}", round_index=t)
        if loss.min() < 0 or loss.max() > 1:
            raise ProtocolError(f"round {t}: losses must lie in [0, 1]", round_index=t)
        if realizable:
            zero_loss &= loss == 0
            if not zero_loss.any():
                raise ProtocolError(f"round {t}: no expert has zero loss so far", round_index=t)
        total += loss[i - 1]
        cum += loss
        if transcript is not None:
            transcript.chosen.append(i)
            transcript.losses.append(loss)
        algorithm.observe(loss)
        adversary.observe(i, loss)
    return GameResult(total, total - float(cum.min()), transcript, seed, T)


def write_transcript_csv(path_or_buf, results: Sequence[GameResult]) -> None:
    """Write ``rep,t,x,y,pred,mistake,hypothesis`` rows for each result in order."""
    own = isinstance(path_or_buf, (str, bytes)) or hasattr(path_or_buf, "__fspath__")
    f = open(path_or_buf, "w", newline="") if own else path_or_buf
    try:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(TRANSCRIPT_FIELDS)
        for rep, res in enumerate(results):
            if res.transcript is not None:
                w.writerows(res.transcript.rows(rep))
    finally:
        if own:
            f.close()


def transcript_csv_text(results) -> str:
    buf = io.StringIO()
    write_transcript_csv(buf, results)
    return buf.getvalue()
