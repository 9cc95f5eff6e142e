"""Multiclass-to-binary graph reduction: ``h̄(x, y) = 1{h(x) = y}``.

The reduced domain is the pairs ``(x, y)``. Binary hypotheses over it are
evaluated lazily on pairs; ``bar_class`` materializes the full pair domain
only for small products.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classes import ExplicitClass
from .core import (
    DomainMismatch,
    Hypothesis,
    LabeledDistribution,
    LabelSpace,
    OverCapError,
    TrainingSequence,
)

MAX_BAR_POINTS = 100_000


class BarHypothesis(Hypothesis):
    """Indicator of the graph of ``h``, evaluated on ``(x, y)`` pairs."""

    __slots__ = ("base",)

    def __init__(self, base: Hypothesis):
        self.base = base

    @property
    def domain_size(self) -> int:
        return self.base.domain_size

    def __call__(self, point) -> int:
        try:
            x, y = point
        except (TypeError, ValueError):
            raise DomainMismatch(f"reduced hypotheses take (x, y) pairs, got {point!r}") from None
        return int(self.base(x) == y)

    def values(self):
        raise TypeError("the pair domain is not enumerable without a label space; use bar_class")

    def __eq__(self, other) -> bool:
        return isinstance(other, BarHypothesis) and self.base == other.base

    def __hash__(self) -> int:
        return hash(("bar", self.base))

    def __repr__(self) -> str:
        return f"BarHypothesis({self.base!r})"


def bar_hypothesis(h: Hypothesis) -> BarHypothesis:
    return BarHypothesis(h)


@dataclass(frozen=True)
class BarClass:
    """The binary image class over the enumerated pair domain.

    ``explicit`` has points ``1..|X||Y|``; ``bar_points[i-1]`` is the pair
    that point ``i`` stands for.
    """

    explicit: ExplicitClass
    bar_points: tuple[tuple, ...]

    def point_id(self, x, y) -> int:
        return self.bar_points.index((x, y)) + 1

    def encode(self, S: TrainingSequence) -> TrainingSequence:
        """Rewrite ``((x, y), b)`` examples over the explicit pair ids."""
        ids = {p: i for i, p in enumerate(self.bar_points, start=1)}
        return TrainingSequence(tuple((ids[pair], b) for pair, b in S))

    def __len__(self) -> int:
        return len(self.explicit)


def bar_class(H: ExplicitClass, max_points: int = MAX_BAR_POINTS) -> BarClass:
    n, k = H.domain_size, H.n_labels
    if n * k > max_points:
        raise OverCapError(f"pair domain has {n * k} points, cap is {max_points}")
    vals = H.labels.values
    bar_points = tuple((x, vals[j]) for x in range(1, n + 1) for j in range(k))
    # column (x, j) of the image is 1 where row's label at x has id j
    M = (H.matrix[:, :, None] == np.arange(k)[None, None, :]).reshape(len(H), n * k)
    labels = LabelSpace([0, 1])
    cls = ExplicitClass(M.astype(np.int64), labels, name=f"bar({H.name})")
    return BarClass(cls, bar_points)


def lift_distribution(D: LabeledDistribution) -> LabeledDistribution:
    """``D_1``: the pair ``(x, y)`` becomes a point, labelled 1, same mass."""
    return LabeledDistribution(tuple((((x, y), 1), p) for (x, y), p in D.support))


def bar_learner(A):
    """Wrap a multiclass learner so it trains on ``((x, y), b)`` examples.

    The bit column is ignored.
    """

    def learner(S: TrainingSequence) -> BarHypothesis:
        base = TrainingSequence(tuple(pair for pair, _ in S))
        return BarHypothesis(A(base))

    learner.base = A
    return learner
