"""Majorities of ERM learners for multiclass classification, at desk scale."""

from .aggregation import TiePolicy, majority_vote
from .classes import CantorClass, ExplicitClass
from .core import (
    BOTTOM,
    STAR,
    LabeledDistribution,
    LabelSpace,
    RandomSource,
    SetHypothesis,
    TableHypothesis,
    TrainingSequence,
    is_consistent,
    is_realizable,
    loss_exact,
)
from .dimensions import ds_dimension, graph_dimension, vc_dimension

__version__ = "0.1.0"
