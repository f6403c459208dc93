"""Compact string descriptors for learners and adversaries.

A descriptor is ``name`` or ``name:key=value,key=value``. Parameters missing
from the descriptor (chiefly ``d``) are filled from the sweep cell.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..adversaries import (
    ChargeAllButPerfect,
    ChargeCurrentExpert,
    ChargePreviousExpert,
    MwAdversary,
    ThresholdMidpointAdversary,
    labeled_stream,
    repeat_positive,
)
from ..errors import ConfigurationError
from ..hypotheses import make_complementary_pair
from ..learners import (
    AdaptiveOPE,
    ComplementaryLearner,
    FirstPositiveLearner,
    PointDLearner,
    PointNLearner,
    RepresentationReductionLearner,
    SequentialOPE,
    ThresholdLearner,
    point_sampler,
)

BINARY, EXPERTS = "binary", "experts"


def split_descriptor(desc: str) -> tuple[str, dict[str, str]]:
    if not isinstance(desc, str) or not desc.strip():
        raise ConfigurationError(f"empty descriptor {desc!r}")
    name, _, rest = desc.strip().partition(":")
    params = {}
    for part in filter(None, rest.split(",")):
        key, eq, value = part.partition("=")
        if not eq:
            raise ConfigurationError(f"bad parameter {part!r} in descriptor {desc!r}")
        params[key.strip()] = value.strip()
    return name, params


def _int(params, key, desc, default=None):
    if key not in params:
        if default is None:
            raise ConfigurationError(f"descriptor {desc!r} needs {key}=")
        return default
    try:
        return int(params[key])
    except ValueError:
        raise ConfigurationError(f"{key} must be an integer in {desc!r}") from None


@dataclass
class LearnerSpec:
    desc: str
    name: str
    kind: str
    params: dict = field(default_factory=dict)
    needs_d: bool = False

    def dimension(self, d=None):
        if "d" in self.params:
            return _int(self.params, "d", self.desc)
        if self.needs_d and d is None:
            raise ConfigurationError(f"learner {self.desc!r} needs a domain size d")
        return d

    def build(self, T, d, epsilon, rng):
        d = self.dimension(d)
        n = self.name
        if n == "point-n":
            return PointNLearner(T, epsilon, rng)
        if n == "point-d":
            return PointDLearner(d, T, epsilon, rng)
        if n == "threshold":
            return ThresholdLearner(d, T, epsilon, rng)
        if n == "complementary":
            f1, f2 = make_complementary_pair()
            return ComplementaryLearner(f1, f2, T, epsilon, rng)
        if n == "ope-seq":
            return SequentialOPE(d, T, epsilon, rng)
        if n == "ope-adaptive":
            return AdaptiveOPE(d, T, epsilon, rng)
        if n == "reduction":
            size = _int(self.params, "size", self.desc, 3 * T)
            return RepresentationReductionLearner(point_sampler(T, size), T, epsilon, rng,
                                                  backend=_BACKENDS[self.params.get("backend", "ope-seq")])
        if n == "first-positive":
            return FirstPositiveLearner()
        raise ConfigurationError(f"unknown learner {self.desc!r}")


_LEARNERS = {
    "point-n": (BINARY, False),
    "point-d": (BINARY, True),
    "threshold": (BINARY, True),
    "complementary": (BINARY, False),
    "ope-seq": (EXPERTS, True),
    "ope-adaptive": (EXPERTS, True),
    "reduction": (BINARY, False),
    "first-positive": (BINARY, False),
}
_BACKENDS = {"ope-seq": SequentialOPE, "ope-adaptive": AdaptiveOPE}


def parse_learner(desc: str) -> LearnerSpec:
    name, params = split_descriptor(desc)
    if name not in _LEARNERS:
        raise ConfigurationError(f"unknown learner {desc!r}; known: {', '.join(sorted(_LEARNERS))}")
    if name == "reduction":
        if params.get("sampler", "point") != "point":
            raise ConfigurationError(f"unknown sampler in {desc!r}")
        if params.get("backend", "ope-seq") not in _BACKENDS:
            raise ConfigurationError(f"unknown backend in {desc!r}")
    kind, needs_d = _LEARNERS[name]
    spec = LearnerSpec(desc, name, kind, params, needs_d)
    if "d" in params:
        spec.dimension()
    return spec


@dataclass
class AdversarySpec:
    desc: str
    name: str
    kind: str
    params: dict = field(default_factory=dict)
    needs_d: bool = False

    def dimension(self, d=None):
        if "d" in self.params:
            return _int(self.params, "d", self.desc)
        if self.needs_d and d is None:
            raise ConfigurationError(f"adversary {self.desc!r} needs a domain size d")
        return d

    def build(self, T, d, rng):
        """Return (adversary, info) where info records the hidden target."""
        d = self.dimension(d)
        n = self.name
        if n == "repeat-positive":
            x = _int(self.params, "x", self.desc, 1)
            return repeat_positive(x, T), {"target": x}
        if n == "mw":
            target = 1 + rng.randbelow(d)
            return MwAdversary(d, target, rng.spawn("mw")), {"target": target}
        if n == "midpoint":
            target = _int(self.params, "target", self.desc, -1)
            if target < 0:
                target = rng.randbelow(d + 1)
            return ThresholdMidpointAdversary(d, target), {"target": target}
        if n == "pair-stream":
            which = _int(self.params, "target", self.desc, 0) or 1 + rng.randbelow(2)
            f = make_complementary_pair()[which - 1]
            return labeled_stream(f, [1] * T), {"target": which}
        perfect = _int(self.params, "perfect", self.desc, 0) or 1 + rng.randbelow(d)
        cls = {"loss-previous": ChargePreviousExpert, "loss-current": ChargeCurrentExpert,
               "loss-all": ChargeAllButPerfect}[n]
        return cls(d, perfect), {"target": perfect}


_ADVERSARIES = {
    "repeat-positive": (BINARY, False),
    "mw": (BINARY, True),
    "midpoint": (BINARY, True),
    "pair-stream": (BINARY, False),
    "loss-previous": (EXPERTS, True),
    "loss-current": (EXPERTS, True),
    "loss-all": (EXPERTS, True),
}


def parse_adversary(desc: str) -> AdversarySpec:
    name, params = split_descriptor(desc)
    if name not in _ADVERSARIES:
        raise ConfigurationError(f"unknown adversary {desc!r}; known: {', '.join(sorted(_ADVERSARIES))}")
    kind, needs_d = _ADVERSARIES[name]
    spec = AdversarySpec(desc, name, kind, params, needs_d)
    if "d" in params:
        spec.dimension()
    return spec


def check_pairing(learner: LearnerSpec, adversary: AdversarySpec) -> None:
    if learner.kind != adversary.kind:
        raise ConfigurationError(
            f"learner {learner.desc!r} plays the {learner.kind} game but adversary "
            f"{adversary.desc!r} plays the {adversary.kind} game")
