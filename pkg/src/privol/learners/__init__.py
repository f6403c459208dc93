"""Private online learners and their non-private baselines."""

from .base import ConstantLearner, FirstPositiveLearner
from .complementary import ComplementaryLearner, bucket_size
from .experts import AdaptiveOPE, EliminationOPE, FixedExpert, SequentialOPE
from .points import PointDLearner, PointNLearner
from .reduction import RepresentationReductionLearner, fixed_sampler, point_sampler
from .threshold import ThresholdLearner


def point_n_learner(T, epsilon, rng):
    return PointNLearner(T, epsilon, rng)


def point_d_learner(d, T, epsilon, rng):
    return PointDLearner(d, T, epsilon, rng)


def threshold_learner(d, T, epsilon, rng):
    return ThresholdLearner(d, T, epsilon, rng)


def complementary_learner(f1, f2, T, epsilon, rng):
    return ComplementaryLearner(f1, f2, T, epsilon, rng)


def ope_sequential(d, T, epsilon, rng):
    return SequentialOPE(d, T, epsilon, rng)


def ope_adaptive(d, T, epsilon, rng):
    return AdaptiveOPE(d, T, epsilon, rng)


def representation_reduction_learner(representation_sampler, ope_backend, T, epsilon, rng):
    return RepresentationReductionLearner(representation_sampler, T, epsilon, rng, backend=ope_backend)


__all__ = [
    "AdaptiveOPE", "ComplementaryLearner", "ConstantLearner", "EliminationOPE",
    "FirstPositiveLearner", "FixedExpert", "PointDLearner", "PointNLearner",
    "RepresentationReductionLearner", "SequentialOPE", "ThresholdLearner",
    "bucket_size", "complementary_learner", "fixed_sampler", "ope_adaptive", "ope_sequential",
    "point_d_learner", "point_n_learner", "point_sampler", "representation_reduction_learner",
    "threshold_learner",
]
