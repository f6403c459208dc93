"""Experiment sweeps, statistics, outputs and reports."""

from .config import ExperimentConfig, load_config
from .descriptors import parse_adversary, parse_learner
from .outputs import emit_outputs, emit_sweep
from .report import SeparationConfig, classify, load_separation_config, render_matrix, separation_report
from .runner import Cell, SweepResult, play, rep_seed, run_sweep
from .stats import SummaryStats, fit_log_slope, hoeffding_halfwidth, slope_lower_bound, summarize
