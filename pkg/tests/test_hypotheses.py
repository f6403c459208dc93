import math
from itertools import product

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from privol.errors import DomainError, ParameterError, UnsupportedError
from privol.hypotheses import (
    ONE,
    POINTS_N,
    ZERO,
    Complement,
    FiniteClass,
    LabeledExample,
    Point,
    RealizabilityTracker,
    Table,
    Threshold,
    best_in_hindsight_errors,
    evaluate,
    find_non_complementary_pair,
    is_realizable,
    make_complementary_pair,
    make_point_class,
    make_threshold_class,
    parse_class,
    sample_point_representation,
)
from privol.noise import NoiseSource

E = LabeledExample


def test_evaluation_rules():
    assert Point(5)(5) == 1 and Point(5)(7) == 0
    assert Threshold(3)(3) == 0 and Threshold(3)(4) == 1
    assert Complement(ZERO)(12) == 1
    assert ONE(3) == 1 and ZERO(3) == 0
    with pytest.raises(DomainError):
        Table((0, 1))(3)
    with pytest.raises(DomainError):
        evaluate(Point(1), 0)


hyps = st.one_of(
    st.builds(Point, st.integers(1, 20)),
    st.builds(Threshold, st.integers(0, 20)),
    st.just(ZERO), st.just(ONE),
)


@given(hyps, st.integers(1, 25))
def test_complement_flips(h, x):
    assert h(x) + Complement(h)(x) == 1


@given(hyps)
def test_evaluate_many_matches_scalar(h):
    xs = np.arange(1, 21)
    assert list(h.evaluate_many(xs)) == [h(int(x)) for x in xs]
    assert list(Complement(h).evaluate_many(xs)) == [1 - h(int(x)) for x in xs]
    assert set(h.support(20).tolist()) == {int(x) for x in xs if h(int(x))}


def test_point_class():
    c = make_point_class(3)
    assert len(c) == 3 and list(c.matrix[1]) == [0, 1, 0]
    assert len(make_point_class(1)) == 1
    with pytest.raises(ParameterError):
        make_point_class(0)


def test_threshold_class():
    c = make_threshold_class(3)
    assert len(c) == 4
    assert c[0](1) == 1
    assert all(c[-1](x) == 0 for x in range(1, 4))
    with pytest.raises(ParameterError):
        make_threshold_class(0)


def test_class_rejects_duplicates_and_empty():
    with pytest.raises(ParameterError):
        FiniteClass([Point(1), Table((1, 0))], [1, 2])
    with pytest.raises(ParameterError):
        FiniteClass([])


def test_column_fast_paths_match_generic():
    for cls in (make_point_class(6), make_threshold_class(6)):
        for x in range(1, 7):
            assert list(cls.column(x)) == [h(x) for h in cls]


def test_representation_sampler():
    r = NoiseSource(7)
    h = sample_point_representation(1, r)
    assert all(h(x) == 1 for x in range(1, 50))
    h = sample_point_representation(100, r)
    assert [h(x) for x in range(1, 200)] == [h(x) for x in range(1, 200)]
    ones = sum(sample_point_representation(100, r)(1) for _ in range(10000))
    assert abs(ones / 10000 - 0.01) <= 0.0035
    with pytest.raises(ParameterError):
        sample_point_representation(0, r)


def test_representation_consistency_rate():
    # stream labeled by f_{x*} with x* and T - 1 distinct negatives
    T, R = 20, 40000
    r = NoiseSource(31)
    negatives = range(2, T + 1)
    hits = 0
    for _ in range(R):
        h = sample_point_representation(T, r)
        hits += h(1) == 1 and all(h(x) == 0 for x in negatives)
    p = (1 / T) * (1 - 1 / T) ** (T - 1)
    assert abs(hits / R - p) <= 3 * math.sqrt(p * (1 - p) / R)


def test_non_complementary_pair_examples():
    f1, f2, u0, u1 = find_non_complementary_pair(make_point_class(3))
    assert (f1, f2, u0, u1) == (Point(1), Point(2), 3, 1)
    assert find_non_complementary_pair(make_point_class(2)) is None
    assert find_non_complementary_pair(make_point_class(1)) is None
    for d in range(3, 8):
        assert find_non_complementary_pair(make_point_class(d)) is not None
    with pytest.raises(UnsupportedError):
        find_non_complementary_pair(FiniteClass([Point(1)]))


def _all_classes(n):
    funcs = list(product((0, 1), repeat=n))
    for mask in range(1, 1 << len(funcs)):
        yield [funcs[i] for i in range(len(funcs)) if mask >> i & 1]


def test_non_complementary_pair_exhaustive():
    for n in (1, 2, 3):
        for tables in _all_classes(n):
            cls = FiniteClass([Table(t) for t in tables], range(1, n + 1))
            found = find_non_complementary_pair(cls)
            if found is None:
                comp = len(tables) == 2 and all(a + b == 1 for a, b in zip(*tables))
                assert len(tables) == 1 or comp
            else:
                f1, f2, u0, u1 = found
                assert f1 != f2 and f1(u0) == f2(u0) and f1(u1) != f2(u1)


def test_realizability():
    ok, w = is_realizable([E(2, 1), E(3, 0)], make_point_class(3))
    assert ok and w == Point(2)
    assert not is_realizable([E(2, 1), E(2, 0)], make_point_class(3))[0]
    assert not is_realizable([E(2, 1), E(2, 0)], POINTS_N)[0]
    assert not is_realizable([E(1, 1), E(2, 1)], POINTS_N)[0]
    ok, w = is_realizable([E(1, 0), E(2, 0)], POINTS_N)
    assert ok and w(1) == 0 and w(2) == 0
    assert is_realizable([E(4, 1), E(4, 1), E(9, 0)], POINTS_N) == (True, Point(4))


@given(st.lists(st.tuples(st.integers(1, 4), st.integers(0, 1)), max_size=12))
def test_tracker_agrees_with_batch_check(stream):
    for cls in (make_point_class(4), make_threshold_class(4), POINTS_N):
        tr = RealizabilityTracker(cls)
        for i, (x, y) in enumerate(stream):
            assert tr.add(x, y) == is_realizable([E(*e) for e in stream[:i + 1]], cls)[0]


def test_best_in_hindsight():
    s = [E(1, 1), E(1, 1), E(2, 1), E(3, 0)]
    assert best_in_hindsight_errors(s, make_point_class(3)) == 1
    assert best_in_hindsight_errors(s, POINTS_N) == 1
    assert best_in_hindsight_errors([], POINTS_N) == 0


def test_parse_class():
    assert len(parse_class("point:d=8")) == 8
    assert len(parse_class("threshold:d=5")) == 6
    pair = parse_class("pair:complementary")
    assert pair[0](1) + pair[1](1) == 1
    t = parse_class("table:011,101")
    assert [h(1) for h in t] == [0, 1]
    assert parse_class("point-n") is POINTS_N
    for bad in ("nope", "point:d=x", "table:01,1", "threshold"):
        with pytest.raises(ParameterError):
            parse_class(bad)


def test_complementary_pair_default():
    f1, f2 = make_complementary_pair()
    assert f1 == Point(1) and f2 == Complement(Point(1))
