"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` or directly as a script.
"""

import math
import sys
import time
from fractions import Fraction

import numpy as np
import pytest

import goldens
from privol.adversaries import (
    ChargePreviousExpert,
    MwAdversary,
    ThresholdMidpointAdversary,
    build_packing_streams,
    constant_profile,
    decaying_profile,
    family_clause_violations,
    labeled_stream,
    memorizing_profile,
    repeat_positive,
    search_success_bound,
    smoothed_search_distribution,
    wlog_filter,
)
from privol.bench import ExperimentConfig, fit_log_slope, run_sweep
from privol.game import run_game, run_ope_game
from privol.hypotheses import find_non_complementary_pair, make_complementary_pair, make_point_class, \
    make_threshold_class, FiniteClass, Point
from privol.learners import (
    AdaptiveOPE,
    ComplementaryLearner,
    PointDLearner,
    PointNLearner,
    RepresentationReductionLearner,
    SequentialOPE,
    ThresholdLearner,
    fixed_sampler,
)
from privol.littlestone import littlestone_dimension, littlestone_dimension_bruteforce
from privol.noise import NoiseSource, derive_seed
from privol.primitives import SvtAnswer, report_noisy_max, svt_init

SEED = 2024
RESULTS = {}  # criterion number -> result line, printed by the conftest summary hook


def report(n, name, ok, detail="", started=None):
    took = f" ({time.time() - started:.1f}s)" if started is not None else ""
    line = f"[acceptance {n}] {'PASS' if ok else 'FAIL'}  {name}: {detail}{took}"
    RESULTS[n] = line
    print(line)
    assert ok, line


def sweep(learner, adversary, T, d=None, reps=200, eps=1.0):
    cfg = ExperimentConfig(learner, adversary, epsilon=eps, T=T, d=[] if d is None else [d],
                           replications=reps, seed=SEED, record_rounds=False)
    return run_sweep(cfg)


def test_1_zero_noise_golden_transcripts():
    t0 = time.time()
    ok = {}
    for name in ["point_d", "point_n", "threshold", "complementary", "sequential"]:
        actual, expected = getattr(goldens, name)()
        ok[name] = goldens.matches(actual, expected)
    actual, expected, alg = goldens.adaptive()
    ok["adaptive"] = goldens.matches(actual, expected) and alg.inner.eliminations == [[1, 2, 4]]
    bad = [k for k, v in ok.items() if not v]
    report(1, "zero-noise golden transcripts", not bad and time.time() - t0 < 1,
           f"{len(ok) - len(bad)}/{len(ok)} exact" + (f", mismatched {bad}" if bad else ""), t0)


def test_2_privacy_ledgers():
    t0 = time.time()
    T, eps = 2000, Fraction(3, 4)
    f1, f2 = make_complementary_pair()
    binary = [
        ("point-n", PointNLearner(T, 40 * eps, NoiseSource(1)), repeat_positive(2, T), 40 * eps),
        ("point-d", PointDLearner(16, T, eps, NoiseSource(2)), MwAdversary(16, 3, NoiseSource(3)), eps),
        ("threshold", ThresholdLearner(16, T, 8 * eps, NoiseSource(4)), ThresholdMidpointAdversary(16, 5), 8 * eps),
        ("complementary", ComplementaryLearner(f1, f2, T, eps, NoiseSource(5)), labeled_stream(f2, [1] * T), eps),
        ("reduction", RepresentationReductionLearner(fixed_sampler([Point(1), Point(2)]), T, eps,
                                                     NoiseSource(6)), repeat_positive(2, T), eps),
    ]
    bad = []
    for name, lrn, adv, e in binary:
        run_game(lrn, adv, T, record=False)
        if not (lrn.ledger.declared() == e and lrn.ledger.spent() == e):
            bad.append(name)
    for name, cls in [("ope-seq", SequentialOPE), ("ope-adaptive", AdaptiveOPE)]:
        alg = cls(6, T, eps, NoiseSource(9))
        run_ope_game(alg, ChargePreviousExpert(6, 4), 6, T, record=False)
        if not (alg.ledger.declared() == eps and alg.ledger.spent() <= eps and alg.ledger.charges):
            bad.append(name)
    report(2, "privacy ledgers compose to constructor epsilon", not bad and time.time() - t0 < 1,
           f"{7 - len(bad)}/7 learners exact" + (f", failing {bad}" if bad else ""), t0)


def test_3_t_free_vs_log_t_separation():
    t0 = time.time()
    comp = sweep("complementary", "pair-stream", [2 ** 10, 2 ** 14])
    lo, hi = (s.mean for s in comp.stats)
    ratio_ok = hi <= 1.5 * lo
    pn = sweep("point-n", "repeat-positive", [2 ** k for k in range(8, 15)])
    fit = fit_log_slope([(s.T, s.mean) for s in pn.stats])
    fit_ok = fit.slope > 0 and fit.r_squared >= 0.8
    report(3, "T-free vs log T separation", ratio_ok and fit_ok and time.time() - t0 < 300,
           f"complementary {lo:.3f} -> {hi:.3f} (limit {1.5 * lo:.3f}); "
           f"point-n slope {fit.slope:.2f}, r^2 {fit.r_squared:.3f}", t0)


def test_4_threshold_learner():
    t0 = time.time()
    d, T, eps, reps = 1024, 2 ** 13, 1.0, 200
    mistakes, pinned = [], 0
    for rep in range(reps):
        seed = derive_seed(SEED, "threshold", rep)
        target = NoiseSource(derive_seed(seed, "target")).randbelow(d + 1)
        lrn = ThresholdLearner(d, T, eps, NoiseSource(derive_seed(seed, "learner")))
        res = run_game(lrn, ThresholdMidpointAdversary(d, target), T, record=False)
        mistakes.append(res.mistake_count)
        pinned += lrn.predict().cut == target
    bound = 3 * math.ceil(math.log2(d + 1)) * (24 * math.log(4 * T * T) * (2 / eps) + 1)
    mean = float(np.mean(mistakes))
    ok = mean <= bound and pinned >= 0.9 * reps and time.time() - t0 < 300
    report(4, "threshold learner vs midpoint adversary", ok,
           f"mean {mean:.1f} <= {bound:.1f}; pinned {pinned}/{reps}", t0)


def test_5_adaptive_adversary_demonstration():
    t0 = time.time()
    ds = [2 ** 4, 2 ** 8, 2 ** 16]
    means = [sweep("point-d", "mw", [4096], d).stats[0].mean for d in ds]
    base = sweep("first-positive", "mw", [4096], 2 ** 16).stats[0].mean
    ok = (all(a < b for a, b in zip(means, means[1:])) and base <= 1.1 and means[-1] >= 10 * base
          and time.time() - t0 < 600)
    report(5, "MW adversary vs point-d learner", ok,
           "means " + ", ".join(f"d={d}: {m:.2f}" for d, m in zip(ds, means)) + f"; baseline {base:.2f}", t0)


def test_6_packing_machinery():
    t0 = time.time()
    f1, f2, u0, u1 = find_non_complementary_pair(make_point_class(3))
    mocks = {"memorizing": memorizing_profile(0.5), "decaying-0.1": decaying_profile(0.1),
             "decaying-0.3": decaying_profile(0.3), "decaying-1": decaying_profile(1.0),
             "low-start": decaying_profile(0.2, start=0.8), "constant-0.25": constant_profile(0.25)}
    families, bad = 0, []
    for name, oracle in mocks.items():
        a, b, kept, swapped = wlog_filter(oracle, 64, f1, f2, u0, u1)
        out = build_packing_streams(oracle, 64, 8, a, b, u0, u1, kept_rounds=kept, swapped=swapped)
        if out.kind == "family":
            families += 1
            if family_clause_violations(out, oracle):
                bad.append(name)
    m = 4
    worst = min(smoothed_search_distribution(lambda mid, i=i: mid >= i, m).get(i, 0.0)
                for i in range(1, m + 1))
    bound = search_success_bound(m)
    ok = families >= 3 and not bad and worst >= bound and time.time() - t0 < 10
    report(6, "packing machinery under exact mocks", ok,
           f"{families} families, clause violations in {bad or 'none'}; "
           f"m=4 exact success {worst:.4f} >= {bound:.4f}", t0)


def test_7_primitive_statistics():
    t0 = time.time()
    b = 2.0
    x = NoiseSource(derive_seed(SEED, "laplace")).laplace_array(b, 10 ** 5)
    var = float(np.var(x))
    var_ok = abs(var - 2 * b * b) <= 0.05 * 2 * b * b
    d, beta, eps = 10, 0.1, 1.0
    gap = 2 * (math.log(d) + math.log(1 / beta)) / eps
    vals = np.zeros(d)
    vals[3] = gap + 1e-9
    rng = NoiseSource(derive_seed(SEED, "rnm"))
    rate = sum(report_noisy_max(vals, eps, rng) == 3 for _ in range(10 ** 4)) / 10 ** 4
    rng = NoiseSource(derive_seed(SEED, "svt"))
    halts = 0
    for _ in range(10 ** 4):
        inst = svt_init(100, 1.0, rng)
        halts += any(inst.query(0.0) is SvtAnswer.ABOVE for _ in range(100))
    ok = var_ok and rate >= 0.85 and halts / 10 ** 4 < 0.01 and time.time() - t0 < 30
    report(7, "primitive statistics", ok,
           f"Laplace var {var:.3f} vs {2 * b * b:.1f}; RNM rate {rate:.3f}; "
           f"SVT false halts {halts / 10 ** 4:.4f}", t0)


def test_8_littlestone_oracle():
    import random
    from itertools import product

    from privol.hypotheses import Table

    t0 = time.time()

    def table_class(tables):
        return FiniteClass([Table(t) for t in tables], range(1, len(tables[0]) + 1))

    funcs3 = list(product((0, 1), repeat=3))
    agree = total = 0
    for mask in range(1, 1 << 8):
        cls = table_class([funcs3[i] for i in range(8) if mask >> i & 1])
        agree += littlestone_dimension(cls) == littlestone_dimension_bruteforce(cls)
        total += 1
    rnd = random.Random(SEED)
    funcs4 = list(product((0, 1), repeat=4))
    for _ in range(50):
        cls = table_class(rnd.sample(funcs4, rnd.randint(1, 16)))
        agree += littlestone_dimension(cls) == littlestone_dimension_bruteforce(cls)
        total += 1
    known = (littlestone_dimension(make_point_class(3)), littlestone_dimension(make_threshold_class(3)),
             littlestone_dimension(FiniteClass([Point(1)], [1, 2, 3])))
    ok = agree == total and known == (1, 2, 0) and time.time() - t0 < 60
    report(8, "Littlestone oracle", ok,
           f"{agree}/{total} classes agree; LD(point_3, thresh_3, singleton) = {known}", t0)


def test_9_ope_head_to_head():
    t0 = time.time()
    seq = sweep("ope-seq", "loss-previous", [2 ** 12], 16).stats[0]
    ada = sweep("ope-adaptive", "loss-previous", [2 ** 12], 16).stats[0]
    report(9, "ope_adaptive vs ope_sequential", ada.mean < seq.mean and time.time() - t0 < 300,
           f"adaptive {ada.mean:.1f} < sequential {seq.mean:.1f}", t0)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
