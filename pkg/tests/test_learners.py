import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import goldens
from privol.adversaries import (
    ChargeAllButPerfect,
    ChargeCurrentExpert,
    ChargePreviousExpert,
    MwAdversary,
    ThresholdMidpointAdversary,
    labeled_stream,
    repeat_positive,
)
from privol.errors import ConfigurationError, ParameterError
from privol.game import ObliviousAdversary, run_game, run_ope_game
from privol.hypotheses import (ZERO, Complement, LabeledExample, Point, Threshold, is_realizable,
                               make_complementary_pair, make_point_class, make_threshold_class)
from privol.learners import (
    AdaptiveOPE,
    ComplementaryLearner,
    EliminationOPE,
    FirstPositiveLearner,
    PointDLearner,
    PointNLearner,
    RepresentationReductionLearner,
    SequentialOPE,
    ThresholdLearner,
    bucket_size,
    fixed_sampler,
    ope_adaptive,
    point_n_learner,
    point_sampler,
    representation_reduction_learner,
)
from privol.learners.experts import elimination_threshold, outer_threshold, sequential_threshold
from privol.learners.points import point_d_threshold, point_n_acceptance, point_n_threshold
from privol.learners.threshold import epoch_threshold
from privol.noise import NoiseSource

E = LabeledExample
zero = goldens.zero


# -- frozen threshold values (natural logs, evaluated independently) -------

def test_threshold_formulas_frozen():
    # reference values computed at 30 digits with mpmath
    assert point_n_threshold(64, 0.5) == pytest.approx(760.2146461698, rel=1e-10)
    assert point_n_acceptance(64, 0.5) == pytest.approx(359.0773415968, rel=1e-10)
    assert point_d_threshold(4, 64, 20.0) == pytest.approx(4.8173729049, rel=1e-10)
    assert point_d_threshold(1024, 4096, 0.5) == pytest.approx(384.0035380302, rel=1e-10)
    assert epoch_threshold(8192, 0.5) == pytest.approx(621.0598737817, rel=1e-10)
    assert sequential_threshold(4096, 1.0) == pytest.approx(155.9581156260, rel=1e-10)
    assert elimination_threshold(64, 4, 50.0, 100 / 24) == pytest.approx(5.2271428034, rel=1e-10)
    assert outer_threshold(64, 4, 100.0) == pytest.approx(9.8597760709, rel=1e-10)
    # ceil(2 ln 3 / eps): 2.197 -> 3, 4.394 -> 5, 8.789 -> 9
    assert bucket_size(1.0) == 3 and bucket_size(0.5) == 5 and bucket_size(0.25) == 9


def test_threshold_formulas_against_closed_forms():
    T, e = 97, 0.37
    assert point_n_threshold(T, e) == pytest.approx((20 * math.log(12 * T**3) + 8 * math.log(6 * T**2)) / e)
    assert point_d_threshold(13, T, e) == pytest.approx(
        3 * (math.log(13) + math.log(2 * T)) / e + 8 * math.log(4 * T**2) / e)


# -- golden transcripts ----------------------------------------------------

@pytest.mark.parametrize("name", ["point_d", "point_n", "threshold", "complementary", "sequential"])
def test_golden_transcripts(name):
    actual, expected = getattr(goldens, name)()
    assert goldens.matches(actual, expected)


@pytest.mark.parametrize("seed", [11, 12, 13])
def test_golden_elimination(seed):
    actual, expected, alg = goldens.elimination(seed)
    assert goldens.matches(actual, expected)
    assert alg.eliminations == [[1, 2, 4]] and alg.active == [3]


@pytest.mark.parametrize("seed", [11, 12])
def test_golden_adaptive(seed):
    actual, expected, alg = goldens.adaptive(seed)
    assert goldens.matches(actual, expected)
    assert alg.fallback is None and alg.inner.eliminations == [[1, 2, 4]]


# -- point learners --------------------------------------------------------

def test_point_n_zero_noise_halts_at_ceil_L():
    T = 64
    lrn = PointNLearner(T, 1.0, zero())
    L = point_n_threshold(T, 0.5)
    assert L > T
    run_game(lrn, repeat_positive(2, T), T)
    assert lrn.phase == "monitor"  # L > T: never fires at eps=1
    lrn = PointNLearner(2000, 1.0, zero())
    L = point_n_threshold(2000, 0.5)
    run_game(lrn, repeat_positive(2, 2000), 2000)
    assert lrn.halt_round == math.ceil(L)
    assert lrn.committed_h(2) == 1


def test_point_n_phases_are_monotone():
    lrn = PointNLearner(300, 50.0, NoiseSource(4))
    seen = []
    for t in range(300):
        seen.append(lrn.phase)
        lrn.update(7, 1)
    order = {"monitor": 0, "sampling": 1, "committed": 2}
    assert all(order[a] <= order[b] for a, b in zip(seen, seen[1:]))
    assert (lrn.committed_h is not None) == (lrn.phase == "committed")


def test_point_n_sampling_cap_falls_back_to_zero():
    # T=2, eps=200: L = (20 ln 96 + 8 ln 24)/100 = 1.17, so the second positive halts
    lrn = PointNLearner(2, 200.0, zero())
    lrn.cap = 0
    lrn.update(3, 1)
    assert lrn.phase == "monitor"
    lrn.update(3, 1)
    assert lrn.phase == "committed" and lrn.committed_h == ZERO and lrn.samples_drawn == 0


def test_point_n_commits_consistent_monte_carlo():
    T, good = 2**12, 0
    for rep in range(200):
        lrn = PointNLearner(T, 1.0, NoiseSource(1000 + rep))
        for _ in range(T):
            lrn.update(9, 1)
        good += lrn.committed_h is not None and lrn.committed_h(9) == 1
    assert good >= 180


def test_point_d_zero_noise_commit_round():
    T, d = 256, 8
    lrn = PointDLearner(d, T, 8.0, zero())
    res = run_game(lrn, repeat_positive(5, T), T)
    L = point_d_threshold(d, T, 4.0)
    assert lrn.halt_round == math.ceil(L) and lrn.committed == 5
    assert res.mistake_count == math.ceil(L)
    assert lrn.predict()(6) == 0


def test_point_d_ignores_out_of_domain_positive():
    lrn = PointDLearner(4, 64, 40.0, zero())
    stream = [E(9, 1)] * 3 + [E(2, 1)] * 61
    run_game(lrn, ObliviousAdversary(stream), 64)
    assert lrn.committed == 2


# -- threshold learner -----------------------------------------------------

def test_threshold_interval_never_grows_and_counters_reset():
    lrn = ThresholdLearner(64, 4096, 20.0, NoiseSource(7))
    adv = ThresholdMidpointAdversary(64, 17)
    width = lrn.r - lrn.l
    draws_before = None
    for t in range(1, 4097):
        h = lrn.predict()
        ex = adv.example(t, h)
        epoch = lrn.epoch
        counter = lrn.rng.counter
        lrn.update(*ex)
        adv.observe(h, ex)
        assert lrn.r - lrn.l <= width and 0 <= lrn.l <= lrn.r <= 64
        width = lrn.r - lrn.l
        if lrn.epoch != epoch:
            assert lrn.c0 == lrn.c1 == 0
            # one query draw, one comparison draw, one fresh threshold draw
            assert lrn.rng.counter - counter == 3
    assert lrn.l <= 17 <= lrn.r


def test_threshold_no_transitions_once_pinned():
    lrn = ThresholdLearner(1, 64, 1.0, zero())
    lrn.l = lrn.r = 1
    for _ in range(50):
        lrn.update(1, 1)
    assert lrn.epoch == 0


# -- complementary ---------------------------------------------------------

def test_complementary_rejects_non_pair():
    with pytest.raises(ParameterError):
        ComplementaryLearner(Point(1), Point(2), 10, 1, zero())
    with pytest.raises(ParameterError):
        ComplementaryLearner(Point(1), Point(2), 10, 1, zero(), check_domain=[1, 2, 3])
    # over [2] the two point functions are complements of each other
    ComplementaryLearner(Point(1), Point(2), 10, 1, zero(), check_domain=[1, 2])


def test_complementary_zero_noise_vote_counts():
    f1, f2 = make_complementary_pair()
    lrn = ComplementaryLearner(f1, f2, 90, 0.25, zero())
    assert lrn.s == 9
    res = run_game(lrn, labeled_stream(f1, [1] * 90), 90)
    assert lrn.c1 + lrn.c2 == 10 and lrn.c1 == 10
    assert res.mistake_count <= lrn.s


# -- experts ---------------------------------------------------------------

def test_sequential_perfect_first_expert():
    alg = SequentialOPE(4, 100, 1.0, zero())
    res = run_ope_game(alg, ChargeAllButPerfect(4, 1), 4, 100)
    assert res.mistake_count == 0 and alg.switches == []


def test_sequential_two_experts_hand_step():
    T, eps = 64, 20.0
    alg = SequentialOPE(2, T, eps, zero())
    res = run_ope_game(alg, ChargeAllButPerfect(2, 2), 2, T)
    assert alg.switches == [2] and res.mistake_count == math.ceil(alg.threshold)


def test_sequential_wraps_around():
    alg = SequentialOPE(2, 64, 20.0, zero())
    for _ in range(5):
        alg.observe(np.array([1.0, 0.0]))
    for _ in range(5):
        alg.observe(np.array([0.0, 1.0]))
    assert alg.switches == [2, 1]


def test_adaptive_single_expert_short_circuit():
    alg = ope_adaptive(1, 50, 1.0, NoiseSource(1))
    res = run_ope_game(alg, ChargeAllButPerfect(1, 1), 1, 50)
    assert res.mistake_count == 0 and alg.ledger.charges == []


def test_elimination_state_invariants():
    alg = EliminationOPE(8, 2000, 1.0, NoiseSource(3))
    adv = ChargePreviousExpert(8, 5)
    sizes = []
    for t in range(1, 2001):
        i = alg.choose()
        loss = adv.losses(t)
        alg.observe(loss)
        adv.observe(i, loss)
        assert np.all(alg.a >= alg.c) and np.all(alg.c >= 0) and alg.active
        sizes.append(len(alg.active))
    assert all(a >= b for a, b in zip(sizes, sizes[1:]))


def test_sequential_loss_bound_monte_carlo():
    d, T, eps = 8, 2**12, 1.0
    bound = 2 * d * sequential_threshold(T, eps)
    losses = []
    for rep in range(200):
        alg = SequentialOPE(d, T, eps, NoiseSource(5000 + rep))
        losses.append(run_ope_game(alg, ChargeCurrentExpert(d, 1 + rep % d), d, T, record=False).mistake_count)
    assert np.mean(losses) <= bound


def test_adaptive_fallback_switch():
    # tiny epsilon: the guard may fire; the fallback then uses its own phase budget
    alg = AdaptiveOPE(3, 3000, Fraction(1, 20), NoiseSource(2))
    run_ope_game(alg, ChargePreviousExpert(3, 2), 3, 3000, record=False)
    assert alg.ledger.spent() <= alg.ledger.declared() == Fraction(1, 20)


# -- reduction -------------------------------------------------------------

def test_reduction_singleton_target():
    lrn = representation_reduction_learner(fixed_sampler([Point(4)]), SequentialOPE, 64, 1.0, zero())
    assert run_game(lrn, repeat_positive(4, 64), 64).mistake_count == 0


def test_reduction_zero_noise_bound():
    V = [Point(1), Point(2), ZERO, Point(7), Point(9)]
    T, eps = 200, 20.0
    lrn = RepresentationReductionLearner(fixed_sampler(V), T, eps, zero())
    res = run_game(lrn, repeat_positive(7, T), T)
    L = math.ceil(sequential_threshold(T, eps))
    assert res.mistake_count <= 4 * L
    assert lrn.predict() == Point(7)


def test_reduction_empty_sampler():
    with pytest.raises(ConfigurationError):
        RepresentationReductionLearner(fixed_sampler([]), 10, 1.0, zero())


def test_point_sampler_size():
    assert len(point_sampler(10)(NoiseSource(1))) == 30
    assert len(point_sampler(10, 4)(NoiseSource(1))) == 4


# -- privacy ledgers -------------------------------------------------------

def _ledger_games():
    eps = Fraction(3, 4)
    T = 3000
    f1, f2 = make_complementary_pair()
    yield "point-n", PointNLearner(T, 40 * eps, NoiseSource(1)), repeat_positive(2, T), 40 * eps
    yield "point-d", PointDLearner(16, T, eps, NoiseSource(2)), MwAdversary(16, 3, NoiseSource(3)), eps
    yield "threshold", ThresholdLearner(16, T, 8 * eps, NoiseSource(4)), ThresholdMidpointAdversary(16, 5), 8 * eps
    yield "complementary", ComplementaryLearner(f1, f2, T, eps, NoiseSource(5)), labeled_stream(f2, [1] * T), eps
    yield "reduction", RepresentationReductionLearner(fixed_sampler([Point(1), Point(2)]), T, eps, NoiseSource(6)), repeat_positive(2, T), eps


@pytest.mark.parametrize("game", list(_ledger_games()), ids=lambda g: g[0])
def test_ledger_totals_binary(game):
    _, lrn, adv, eps = game
    run_game(lrn, adv, 3000, record=False)
    assert lrn.ledger.declared() == eps
    assert lrn.ledger.spent() == eps


@pytest.mark.parametrize("cls", [SequentialOPE, AdaptiveOPE])
def test_ledger_totals_experts(cls):
    eps = Fraction(1, 2)
    alg = cls(6, 3000, eps, NoiseSource(9))
    run_ope_game(alg, ChargePreviousExpert(6, 4), 6, 3000, record=False)
    assert alg.ledger.declared() == eps
    assert alg.ledger.spent() <= eps
    assert alg.ledger.charges


# -- realizable consistency in zero-noise mode -----------------------------

@given(st.integers(1, 8), st.lists(st.integers(1, 8), min_size=1, max_size=60))
@settings(max_examples=30, deadline=None)
def test_zero_noise_point_d_terminal_consistent(target, xs):
    f = Point(target)
    stream = [E(x, f(x)) for x in xs] + [E(target, 1)] * 200
    lrn = PointDLearner(8, len(stream), 40.0, zero())
    run_game(lrn, ObliviousAdversary(stream), len(stream))
    assert all(lrn.predict()(x) == y for x, y in stream)


@given(st.integers(0, 16))
@settings(max_examples=17, deadline=None)
def test_zero_noise_threshold_terminal_consistent(target):
    T = 400
    lrn = ThresholdLearner(16, T, 200.0, zero())
    res = run_game(lrn, ThresholdMidpointAdversary(16, target), T)
    h = lrn.predict()
    assert h == Threshold(target)
    assert all(h(x) == y for x, y in res.transcript.examples)
