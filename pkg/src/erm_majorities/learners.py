"""Learners: the canonical first-consistent ERM and the adversarial Cantor ERM."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .classes import CantorClass, ExplicitClass
from .core import (
    STAR,
    InvalidInput,
    NoConsistentHypothesis,
    SetHypothesis,
    TrainingSequence,
)


@dataclass(frozen=True)
class CantorParams:
    d: int
    domain_size: int
    eps: float | None = None

    def __post_init__(self):
        if self.d < 0:
            raise InvalidInput("d must be nonnegative")
        if self.domain_size < self.d:
            raise InvalidInput(f"domain size {self.domain_size} is smaller than d={self.d}")

    @classmethod
    def from_eps(cls, d: int, eps: float) -> "CantorParams":
        if not 0 < eps <= 1:
            raise InvalidInput(f"eps={eps} outside (0, 1]")
        # Fraction(str(.)) keeps 3/(4*0.05) at 15 instead of 14.999...
        n = math.ceil(Fraction(d) / (4 * Fraction(str(eps))))
        return cls(d, max(n, 1), eps)


def erm_first_consistent(H, S: TrainingSequence):
    h = H.find_consistent(S)
    if h is None:
        raise NoConsistentHypothesis("training sequence is not realizable by the class")
    return h


def unseen_points(domain_size: int, S: TrainingSequence) -> list[int]:
    seen = set(S.points)
    return [x for x in range(1, domain_size + 1) if x not in seen]


def erm_bad_cantor(p: CantorParams, S: TrainingSequence) -> SetHypothesis:
    """Label the ``d`` smallest unseen points with their own set.

    With fewer than ``d`` unseen points, all of them are used.
    """
    for x, y in S:
        if y != STAR:
            raise InvalidInput(f"bad ERM is defined against the all-* target, got label {y!r}")
        if not 1 <= x <= p.domain_size:
            raise InvalidInput(f"point {x} outside 1..{p.domain_size}")
    return SetHypothesis(unseen_points(p.domain_size, S)[: p.d], p.domain_size)


class Learner:
    """A deterministic map from training sequences to hypotheses."""

    name = "learner"
    proper = False
    hypothesis_class = None

    def __call__(self, S: TrainingSequence):
        raise NotImplementedError


class FirstConsistentERM(Learner):
    name = "erm"
    proper = True

    def __init__(self, H):
        self.hypothesis_class = H

    def __call__(self, S: TrainingSequence):
        return erm_first_consistent(self.hypothesis_class, S)


class BadCantorERM(Learner):
    name = "erm_bad"
    proper = True

    def __init__(self, params: CantorParams):
        self.params = params
        self.hypothesis_class = CantorClass(params.d, params.domain_size)

    def __call__(self, S: TrainingSequence) -> SetHypothesis:
        return erm_bad_cantor(self.params, S)


class FixedLearner(Learner):
    """Ignores its input and always returns ``h``."""

    name = "fixed"

    def __init__(self, h, H: ExplicitClass | None = None):
        self.h = h
        self.hypothesis_class = H
        self.proper = H is not None and h in H

    def __call__(self, S: TrainingSequence):
        return self.h
