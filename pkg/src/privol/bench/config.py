"""Experiment configuration files."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields

from ..errors import ConfigurationError


@dataclass
class ExperimentConfig:
    learner: str
    adversary: str
    epsilon: float = 1.0
    delta: float = 0.0
    T: list = field(default_factory=lambda: [1024])
    d: list = field(default_factory=list)
    replications: int = 1
    seed: int = 0
    out: str | None = None
    label: str | None = None
    zero_noise: bool = False
    record_rounds: bool = True
    hoeffding_range: float | str = "observed"
    confidence: float = 0.95
    workers: int = 1

    def __post_init__(self):
        if isinstance(self.T, int):
            self.T = [self.T]
        if isinstance(self.d, int):
            self.d = [self.d]
        self.T = [int(t) for t in self.T]
        self.d = [int(x) for x in self.d]
        if self.replications < 1:
            raise ConfigurationError(f"replications must be >= 1, got {self.replications}")
        if not self.T or any(t < 1 for t in self.T):
            raise ConfigurationError(f"T values must be positive, got {self.T}")
        if any(x < 1 for x in self.d):
            raise ConfigurationError(f"d values must be positive, got {self.d}")
        if not self.epsilon > 0:
            raise ConfigurationError(f"epsilon must be positive, got {self.epsilon}")
        if not 0 <= self.delta < 1:
            raise ConfigurationError(f"delta must lie in [0, 1), got {self.delta}")
        if not 0 < self.confidence < 1:
            raise ConfigurationError(f"confidence must lie in (0, 1), got {self.confidence}")
        if self.hoeffding_range != "observed" and not float(self.hoeffding_range) > 0:
            raise ConfigurationError("hoeffding_range must be 'observed' or a positive number")
        if self.workers < 1:
            raise ConfigurationError("workers must be >= 1")

    @property
    def name(self) -> str:
        return self.label or f"{self.learner} vs {self.adversary}"

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        extra = set(d) - known
        if extra:
            raise ConfigurationError(f"unknown config fields: {', '.join(sorted(extra))}")
        try:
            return cls(**d)
        except TypeError as exc:
            raise ConfigurationError(str(exc)) from None

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigurationError(f"config is not valid JSON: {exc}") from None
        if not isinstance(d, dict):
            raise ConfigurationError("config must be a JSON object")
        return cls.from_dict(d)


def load_config(path) -> ExperimentConfig:
    try:
        with open(path) as f:
            return ExperimentConfig.from_json(f.read())
    except OSError as exc:
        raise ConfigurationError(f"cannot read config {path}: {exc.strerror}") from None
