from .composer import ComposedStream, Segment, compose_ld_sequences
from .mw import MwAdversary, mw_adversary_step, mw_adversary_update
from .packing import (
    ExactOracle,
    MonteCarloOracle,
    PackingOutput,
    build_packing_streams,
    constant_profile,
    decaying_profile,
    estimate_prediction_probability,
    family_clause_violations,
    memorizing_profile,
    search_success_bound,
    smoothed_binary_search,
    smoothed_search_distribution,
    smoothed_walk,
    wlog_filter,
)
from .simple import (
    ChargeAllButPerfect,
    ChargeCurrentExpert,
    ChargePreviousExpert,
    ThresholdMidpointAdversary,
    labeled_stream,
    repeat_positive,
)
