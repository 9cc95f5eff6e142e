"""Majority voting with a deliberate-error label, and exact ensemble errors."""

from __future__ import annotations

import enum
import math
from collections import Counter
from typing import Sequence

from .core import BOTTOM, Hypothesis, InvalidInput, LabeledDistribution, label_sort_key


class TiePolicy(enum.Enum):
    IDK = "idk"
    FIRST_VOTER = "first_voter"
    LABEL_ORDER = "label_order"


def _tally(votes: Sequence):
    counts = Counter(votes)
    top = max(counts.values())
    leaders = [y for y, c in counts.items() if c == top]
    return counts, leaders


def vote(votes: Sequence, policy: TiePolicy = TiePolicy.IDK):
    """Aggregate one point's votes; ``votes[0]`` is the first voter's label."""
    if not votes:
        raise InvalidInput("majority vote needs at least one voter")
    _, leaders = _tally(votes)
    if len(leaders) == 1:
        return leaders[0]
    if policy is TiePolicy.IDK:
        return BOTTOM
    if policy is TiePolicy.FIRST_VOTER:
        return votes[0]
    return min(leaders, key=label_sort_key)


def majority_vote(fs: Sequence[Hypothesis], x, policy: TiePolicy = TiePolicy.IDK):
    if not fs:
        raise InvalidInput("majority vote needs at least one hypothesis")
    return vote([f(x) for f in fs], policy)


def _votes_by_point(fs: Sequence[Hypothesis], D: LabeledDistribution) -> dict:
    if not fs:
        raise InvalidInput("need at least one hypothesis")
    cache = {}
    for (x, _), _ in D.support:
        if x not in cache:
            cache[x] = [f(x) for f in fs]
    return cache


def majority_error_exact(fs: Sequence[Hypothesis], D: LabeledDistribution,
                         policy: TiePolicy = TiePolicy.IDK) -> float:
    votes = _votes_by_point(fs, D)
    return math.fsum(p for (x, y), p in D.support if vote(votes[x], policy) != y)


def half_vote_error_exact(fs: Sequence[Hypothesis], D: LabeledDistribution) -> float:
    """Mass where at most half of the voters output the true label."""
    votes = _votes_by_point(fs, D)
    n = len(fs)
    return math.fsum(p for (x, y), p in D.support if 2 * votes[x].count(y) <= n)


def list_error_exact(fs: Sequence[Hypothesis], D: LabeledDistribution) -> float:
    """Mass where no voter outputs the true label."""
    votes = _votes_by_point(fs, D)
    return math.fsum(p for (x, y), p in D.support if y not in votes[x])


def ensemble_errors(fs: Sequence[Hypothesis], D: LabeledDistribution,
                    policy: TiePolicy = TiePolicy.IDK) -> dict[str, float]:
    """All ensemble metrics in one pass over the support.

    ``bottom_rate`` is the mass on which no strict plurality exists.
    """
    votes = _votes_by_point(fs, D)
    n = len(fs)
    maj, half, lst, tie = [], [], [], []
    for (x, y), p in D.support:
        v = votes[x]
        if vote(v, policy) != y:
            maj.append(p)
        if 2 * v.count(y) <= n:
            half.append(p)
        if y not in v:
            lst.append(p)
        if vote(v, TiePolicy.IDK) is BOTTOM:
            tie.append(p)
    return {
        "majority_error": math.fsum(maj),
        "half_vote_error": math.fsum(half),
        "list_error": math.fsum(lst),
        "bottom_rate": math.fsum(tie),
    }
