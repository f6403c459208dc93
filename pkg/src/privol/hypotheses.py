"""Boolean hypotheses over the positive integers and finite classes of them.

Hypotheses are small closed descriptors (point, threshold, constant,
complement, explicit table, lazily sampled random) rather than closures, so
transcripts can be serialized and games replayed.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import DomainError, ParameterError, UnsupportedError
from .noise import NoiseSource, hash_uniform


class LabeledExample(NamedTuple):
    x: int
    y: int


class Hypothesis:
    """Base class. Subclasses implement ``__call__`` and ``evaluate_many``."""

    def __call__(self, x: int) -> int:
        raise NotImplementedError

    def evaluate_many(self, xs: np.ndarray) -> np.ndarray:
        return np.fromiter((self(int(x)) for x in xs), dtype=np.int8, count=len(xs))

    def support(self, d: int) -> np.ndarray:
        """Sorted points of [d] mapped to 1."""
        xs = np.arange(1, d + 1)
        return xs[self.evaluate_many(xs) == 1]

    def describe(self) -> str:
        raise NotImplementedError

    def __str__(self):
        return self.describe()


@dataclass(frozen=True)
class AllZero(Hypothesis):
    def __call__(self, x):
        return 0

    def evaluate_many(self, xs):
        return np.zeros(len(xs), dtype=np.int8)

    def support(self, d):
        return np.empty(0, dtype=np.int64)

    def describe(self):
        return "zero"


@dataclass(frozen=True)
class AllOne(Hypothesis):
    def __call__(self, x):
        return 1

    def evaluate_many(self, xs):
        return np.ones(len(xs), dtype=np.int8)

    def support(self, d):
        return np.arange(1, d + 1)

    def describe(self):
        return "one"


@dataclass(frozen=True)
class Point(Hypothesis):
    """Indicator of a single point."""

    target: int

    def __call__(self, x):
        return 1 if x == self.target else 0

    def evaluate_many(self, xs):
        return (np.asarray(xs) == self.target).astype(np.int8)

    def support(self, d):
        if 1 <= self.target <= d:
            return np.array([self.target])
        return np.empty(0, dtype=np.int64)

    def describe(self):
        return f"point({self.target})"


@dataclass(frozen=True)
class Threshold(Hypothesis):
    """0 on x <= cut, 1 on x > cut."""

    cut: int

    def __call__(self, x):
        return 1 if x > self.cut else 0

    def evaluate_many(self, xs):
        return (np.asarray(xs) > self.cut).astype(np.int8)

    def support(self, d):
        return np.arange(max(self.cut, 0) + 1, d + 1)

    def describe(self):
        return f"threshold({self.cut})"


@dataclass(frozen=True)
class Complement(Hypothesis):
    inner: Hypothesis

    def __call__(self, x):
        return 1 - self.inner(x)

    def evaluate_many(self, xs):
        return (1 - self.inner.evaluate_many(xs)).astype(np.int8)

    def support(self, d):
        return np.setdiff1d(np.arange(1, d + 1), self.inner.support(d), assume_unique=True)

    def describe(self):
        return f"not({self.inner.describe()})"


@dataclass(frozen=True)
class Table(Hypothesis):
    """Explicit truth table over the domain [len(bits)]."""

    bits: tuple

    def __post_init__(self):
        if any(b not in (0, 1) for b in self.bits):
            raise ParameterError("table entries must be bits")

    def __call__(self, x):
        if not 1 <= x <= len(self.bits):
            raise DomainError(f"point {x} outside table domain [1, {len(self.bits)}]")
        return self.bits[x - 1]

    def evaluate_many(self, xs):
        xs = np.asarray(xs)
        if xs.size and (xs.min() < 1 or xs.max() > len(self.bits)):
            raise DomainError("query outside table domain")
        return np.asarray(self.bits, dtype=np.int8)[xs - 1]

    def describe(self):
        return "table(" + "".join(map(str, self.bits)) + ")"


@dataclass(eq=False)
class LazyRandom(Hypothesis):
    """Random hypothesis with Pr[h(x) = 1] = 1/rate independently per x.

    Bits are a deterministic function of (seed, x) and memoized on first use.
    """

    rate: int
    seed: int
    memo: dict = field(default_factory=dict, repr=False)

    def __call__(self, x):
        b = self.memo.get(x)
        if b is None:
            b = 1 if hash_uniform(self.seed, x) * self.rate < 1.0 else 0
            self.memo[x] = b
        return b

    def __eq__(self, other):
        return isinstance(other, LazyRandom) and (self.rate, self.seed) == (other.rate, other.seed)

    def __hash__(self):
        return hash(("lazy", self.rate, self.seed))

    def describe(self):
        return f"lazy(rate=1/{self.rate},seed={self.seed})"


ZERO = AllZero()
ONE = AllOne()


def evaluate(h: Hypothesis, x: int) -> int:
    if x < 1:
        raise DomainError(f"domain points are >= 1, got {x}")
    return h(x)


class FiniteClass:
    """A non-empty finite list of hypotheses, optionally over a finite domain."""

    def __init__(self, hypotheses: Sequence[Hypothesis], domain: Sequence[int] | None = None,
                 name: str | None = None):
        self.hypotheses = list(hypotheses)
        if not self.hypotheses:
            raise ParameterError("a hypothesis class must be non-empty")
        self.domain = None if domain is None else tuple(int(x) for x in domain)
        self.name = name or f"class(n={len(self.hypotheses)})"
        if self.domain is not None:
            if not self.domain:
                raise ParameterError("domain must be non-empty when given")
            if min(self.domain) < 1:
                raise DomainError("domain points are >= 1")
        kinds = {type(h) for h in self.hypotheses}
        self._kind = kinds.pop() if len(kinds) == 1 else None
        if self._kind is Point:
            self._keys = np.array([h.target for h in self.hypotheses])
        elif self._kind is Threshold:
            self._keys = np.array([h.cut for h in self.hypotheses])
        self._matrix = None
        if self.domain is not None and len(self.hypotheses) * len(self.domain) <= 4_000_000:
            rows = self.matrix
            if len({r.tobytes() for r in rows}) != len(rows):
                raise ParameterError("class contains duplicate hypotheses on its domain")

    def __len__(self):
        return len(self.hypotheses)

    def __iter__(self):
        return iter(self.hypotheses)

    def __getitem__(self, i):
        return self.hypotheses[i]

    def __repr__(self):
        return f"FiniteClass({self.name})"

    @property
    def matrix(self) -> np.ndarray:
        """|H| x |domain| array of values."""
        if self.domain is None:
            raise UnsupportedError("class has no finite domain")
        if self._matrix is None:
            xs = np.array(self.domain)
            self._matrix = np.vstack([h.evaluate_many(xs) for h in self.hypotheses]).astype(np.int8)
        return self._matrix

    def column(self, x: int) -> np.ndarray:
        """Values of every hypothesis at x."""
        if self._kind is Point:
            return (self._keys == x).astype(np.int8)
        if self._kind is Threshold:
            return (x > self._keys).astype(np.int8)
        if self._matrix is not None and self.domain is not None:
            try:
                return self._matrix[:, self.domain.index(x)]
            except ValueError:
                pass
        return np.array([h(x) for h in self.hypotheses], dtype=np.int8)


class PointsOverN:
    """The point functions over all positive integers (a structured infinite class)."""

    name = "point-n"

    def __repr__(self):
        return "PointsOverN()"


POINTS_N = PointsOverN()


def make_point_class(d: int) -> FiniteClass:
    if d < 1:
        raise ParameterError(f"d must be >= 1, got {d}")
    return FiniteClass([Point(i) for i in range(1, d + 1)], range(1, d + 1), name=f"point:d={d}")


def make_threshold_class(d: int) -> FiniteClass:
    if d < 1:
        raise ParameterError(f"d must be >= 1, got {d}")
    return FiniteClass([Threshold(i) for i in range(0, d + 1)], range(1, d + 1),
                       name=f"threshold:d={d}")


def make_complementary_pair(h: Hypothesis | None = None) -> tuple[Hypothesis, Hypothesis]:
    h = Point(1) if h is None else h
    return h, Complement(h)


def sample_point_representation(T: int, rng: NoiseSource) -> LazyRandom:
    """A hypothesis with each point independently 1 with probability 1/T."""
    if T < 1:
        raise ParameterError(f"T must be >= 1, got {T}")
    return LazyRandom(int(T), rng.random_u64())


def find_non_complementary_pair(cls: FiniteClass):
    """Return (f1, f2, u0, u1) with f1(u0) = f2(u0) and f1(u1) != f2(u1), or None.

    None means the class is a singleton or a complementary pair.
    """
    if cls.domain is None:
        raise UnsupportedError("needs a finite domain")
    m = cls.matrix
    n = len(cls)
    for a in range(n):
        for b in range(a + 1, n):
            eq = m[a] == m[b]
            if eq.any() and not eq.all():
                u0 = cls.domain[int(np.argmax(eq))]
                u1 = cls.domain[int(np.argmin(eq))]
                return cls[a], cls[b], u0, u1
    return None


def is_realizable(stream: Iterable[LabeledExample], cls) -> tuple[bool, Hypothesis | None]:
    """Whether some hypothesis in ``cls`` labels the whole stream; returns a witness."""
    stream = list(stream)
    if isinstance(cls, PointsOverN):
        pos = {x for x, y in stream if y == 1}
        neg = {x for x, y in stream if y == 0}
        if len(pos) > 1:
            return False, None
        if pos:
            (x,) = pos
            return (False, None) if x in neg else (True, Point(x))
        # any point never seen with label 0
        x = 1
        while x in neg:
            x += 1
        return True, Point(x)
    alive = np.ones(len(cls), dtype=bool)
    for x, y in stream:
        alive &= cls.column(x) == y
        if not alive.any():
            return False, None
    return True, cls[int(np.argmax(alive))]


class RealizabilityTracker:
    """Incremental version of :func:`is_realizable` used by the game engine."""

    def __init__(self, cls):
        self.cls = cls
        self.ok = True
        if isinstance(cls, PointsOverN):
            self._pos = None
            self._neg = set()
        else:
            self._alive = np.ones(len(cls), dtype=bool)

    def add(self, x: int, y: int) -> bool:
        if not self.ok:
            return False
        if isinstance(self.cls, PointsOverN):
            if y == 1:
                if self._pos is not None and self._pos != x:
                    self.ok = False
                else:
                    self._pos = x
                    self.ok = x not in self._neg
            else:
                self._neg.add(x)
                self.ok = self._pos != x
            return self.ok
        self._alive &= self.cls.column(x) == y
        self.ok = bool(self._alive.any())
        return self.ok


def best_in_hindsight_errors(stream: Sequence[LabeledExample], cls) -> int:
    """min over h in cls of the number of examples h gets wrong."""
    if not stream:
        return 0
    if isinstance(cls, PointsOverN):
        pos = Counter(x for x, y in stream if y == 1)
        neg = Counter(x for x, y in stream if y == 0)
        npos = sum(pos.values())
        best = npos  # a point never seen in the stream
        for x in set(pos) | set(neg):
            best = min(best, npos - pos[x] + neg[x])
        return best
    if not isinstance(cls, FiniteClass):
        raise UnsupportedError(f"no best-in-hindsight rule for {cls!r}")
    errs = np.zeros(len(cls), dtype=np.int64)
    for x, y in stream:
        errs += cls.column(x) != y
    return int(errs.min())


def parse_class(desc: str):
    """Build a class from a descriptor such as ``point:d=8`` or ``table:011,101``."""
    name, _, rest = desc.strip().partition(":")
    params = dict(p.split("=", 1) for p in rest.split(",") if "=" in p)
    try:
        if name == "point":
            if params.get("d") in (None, "inf", "n"):
                return POINTS_N
            return make_point_class(int(params["d"]))
        if name == "point-n":
            return POINTS_N
        if name == "threshold":
            return make_threshold_class(int(params["d"]))
        if name == "pair":
            f1, f2 = make_complementary_pair()
            return FiniteClass([f1, f2], [1], name="pair:complementary")
        if name == "table":
            rows = [r for r in rest.split(",") if r]
            if not rows or len({len(r) for r in rows}) != 1:
                raise ParameterError("table rows must be non-empty and of equal length")
            hyps = [Table(tuple(int(c) for c in r)) for r in rows]
            return FiniteClass(hyps, range(1, len(rows[0]) + 1), name=f"table:{rest}")
    except (KeyError, ValueError) as exc:
        if isinstance(exc, ParameterError):
            raise
        raise ParameterError(f"bad class descriptor {desc!r}: {exc}") from exc
    raise ParameterError(f"unknown class descriptor {desc!r}")
