import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from privol.errors import ParameterError
from privol.noise import NoiseSource, derive_seed, hash_uniform, laplace_from_uniform


def test_inverse_cdf_hand_value():
    # u = 0.4 above the centre, b = 1: -ln(1 - 0.8) = ln 5
    assert laplace_from_uniform(0.4, 1.0) == pytest.approx(1.6094379, abs=1e-6)
    assert laplace_from_uniform(-0.4, 1.0) == pytest.approx(-1.6094379, abs=1e-6)
    assert laplace_from_uniform(0.0, 3.0) == 0.0


@given(st.floats(min_value=-0.4999, max_value=0.4999), st.floats(min_value=0.01, max_value=50))
def test_inverse_cdf_matches_scipy(u, b):
    assert laplace_from_uniform(u, b) == pytest.approx(stats.laplace.ppf(u + 0.5, scale=b), rel=1e-9, abs=1e-9)


def test_same_seed_same_stream():
    a, b = NoiseSource(17), NoiseSource(17)
    xs = [a.laplace(2.0) for _ in range(600)]
    ys = [b.laplace(2.0) for _ in range(600)]
    assert xs == ys
    assert a.counter == b.counter == 600


def test_array_draws_match_scalar_draws():
    a, b = NoiseSource(3), NoiseSource(3)
    arr = a.laplace_array(1.5, 700)
    scal = np.array([b.laplace(1.5) for _ in range(700)])
    np.testing.assert_allclose(arr, scal, rtol=1e-12)
    assert a.counter == b.counter


def test_zero_noise_and_counter():
    z = NoiseSource(5, zero_noise=True)
    assert z.laplace(10.0) == 0.0
    assert np.all(z.laplace_array(1.0, 20) == 0)
    assert z.counter == 0
    # uniform choices still run
    assert 0 <= z.randbelow(7) < 7
    assert z.counter == 1


def test_bad_scale():
    with pytest.raises(ParameterError):
        NoiseSource(1).laplace(0.0)
    with pytest.raises(ParameterError):
        NoiseSource(1).laplace_array(-1.0, 3)
    with pytest.raises(ParameterError):
        NoiseSource(1).randbelow(0)


def test_derived_seeds_are_distinct_and_stable():
    seeds = {derive_seed(1, "learner", r) for r in range(1000)}
    assert len(seeds) == 1000
    assert derive_seed(1, "a", 2) == derive_seed(1, "a", 2)
    assert derive_seed(1, "a", 2) != derive_seed(2, "a", 2)
    assert NoiseSource(9).spawn("x").seed == NoiseSource(9).spawn("x").seed


def test_spawn_inherits_zero_noise():
    assert NoiseSource(1, zero_noise=True).spawn("k").zero_noise


def test_laplace_distribution_ks():
    x = NoiseSource(11).laplace_array(2.0, 20000)
    assert stats.kstest(x, "laplace", args=(0, 2.0)).pvalue > 1e-3


@given(st.integers(min_value=0, max_value=2**64 - 1), st.integers(min_value=1, max_value=2**40))
@settings(max_examples=200)
def test_hash_uniform_range(seed, x):
    u = hash_uniform(seed, x)
    assert 0.0 <= u < 1.0
    assert u == hash_uniform(seed, x)


def test_hash_uniform_is_uniform():
    u = np.array([hash_uniform(123, x) for x in range(1, 20001)])
    assert stats.kstest(u, "uniform").pvalue > 1e-3


def test_randbelow_uniform():
    r = NoiseSource(4)
    counts = np.bincount([r.randbelow(5) for _ in range(20000)], minlength=5)
    assert stats.chisquare(counts).pvalue > 1e-3


def test_bernoulli_rate():
    r = NoiseSource(8)
    rate = np.mean([r.bernoulli(0.3) for _ in range(20000)])
    assert abs(rate - 0.3) < 4 * math.sqrt(0.21 / 20000)
