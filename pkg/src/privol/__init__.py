"""Differentially private online learning: learners, adversaries and a game bench."""

from .errors import (
    ConfigurationError,
    ConstructionFailed,
    DomainError,
    OutputError,
    ParameterError,
    PrivolError,
    ProtocolError,
    StateError,
    UnsupportedError,
)
from .game import GameResult, run_game, run_ope_game
from .hypotheses import LabeledExample, parse_class
from .littlestone import littlestone_dimension
from .noise import NoiseSource, derive_seed
from .primitives import AboveThreshold, PrivacyBudget, PrivacyLedger, laplace_mechanism, report_noisy_max

__version__ = "0.1.0"
