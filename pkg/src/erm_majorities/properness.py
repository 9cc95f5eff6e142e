"""Properness numbers: smallest sub-family of a class whose labels cover ``f`` pointwise.

This is minimum set cover with hypothesis ``h`` covering point ``x`` iff
``h(x) == f(x)``. Covers are bitmasks over the domain.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .classes import ExplicitClass
from .core import DomainMismatch, Hypothesis, InvalidInput, TrainingSequence, is_realizable


@dataclass(frozen=True)
class PropernessResult:
    value: float  # int, or math.inf
    cover: tuple[int, ...] | None  # indices into the class

    @property
    def finite(self) -> bool:
        return self.cover is not None

    def to_json(self) -> dict:
        return {
            "value": "inf" if not self.finite else int(self.value),
            "cover": None if self.cover is None else list(self.cover),
        }


INFINITE = PropernessResult(math.inf, None)


def cover_masks(f: Hypothesis, H: ExplicitClass) -> tuple[list[int], int]:
    """Per-hypothesis bitmask of points where it agrees with ``f``, and the full mask."""
    if f.domain_size != H.domain_size:
        raise DomainMismatch(f"f has domain size {f.domain_size}, class has {H.domain_size}")
    masks = [0] * len(H)
    rows = H.matrix.tolist()
    for x, v in enumerate(f.values()):
        ident = H.labels.id_of(v)
        if ident is None:
            continue
        bit = 1 << x
        for i, row in enumerate(rows):
            if row[x] == ident:
                masks[i] |= bit
    return masks, (1 << H.domain_size) - 1


def verify_cover(f: Hypothesis, H: ExplicitClass, cover: Iterable[int]) -> bool:
    hs = [H[i] for i in cover]
    return all(any(h(x) == f(x) for h in hs) for x in range(1, f.domain_size + 1))


def _coverable(masks: Sequence[int], full: int) -> bool:
    union = 0
    for m in masks:
        union |= m
    return union == full


def _greedy(masks: Sequence[int], full: int) -> list[int]:
    chosen, left = [], full
    while left:
        gains = [bin(m & left).count("1") for m in masks]
        best = max(range(len(masks)), key=lambda i: (gains[i], -i))
        chosen.append(best)
        left &= ~masks[best]
    return chosen


def properness_greedy(f: Hypothesis, H: ExplicitClass) -> PropernessResult:
    masks, full = cover_masks(f, H)
    if not _coverable(masks, full):
        return INFINITE
    chosen = _greedy(masks, full)
    return PropernessResult(len(chosen), tuple(chosen))


def properness_exact(f: Hypothesis, H: ExplicitClass) -> PropernessResult:
    """Minimum cover by branch and bound.

    Branches on the uncovered point with the fewest covering hypotheses,
    seeded with the greedy cover as the incumbent.
    """
    masks, full = cover_masks(f, H)
    if not _coverable(masks, full):
        return INFINITE
    # one representative per distinct nonempty mask
    reps: dict[int, int] = {}
    for i, m in enumerate(masks):
        if m and m not in reps:
            reps[m] = i
    cand = list(reps.items())
    best = [idx for idx in _greedy(masks, full)]
    n = H.domain_size

    def search(left: int, chosen: list[int]) -> None:
        nonlocal best
        if not left:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        if len(chosen) + 1 >= len(best):
            return
        widest = max(bin(m & left).count("1") for m, _ in cand)
        if len(chosen) + -(-bin(left).count("1") // widest) >= len(best):
            return
        pivot, pivot_cover = None, None
        for x in range(n):
            if left >> x & 1:
                covering = [(m, i) for m, i in cand if m >> x & 1]
                if pivot is None or len(covering) < len(pivot_cover):
                    pivot, pivot_cover = x, covering
        pivot_cover.sort(key=lambda mi: -bin(mi[0] & left).count("1"))
        for m, i in pivot_cover:
            chosen.append(i)
            search(left & ~m, chosen)
            chosen.pop()

    search(full, [])
    return PropernessResult(len(best), tuple(sorted(best)))


def properness_bruteforce(f: Hypothesis, H: ExplicitClass) -> PropernessResult:
    """Exhaustive subset enumeration; reference for small classes."""
    masks, full = cover_masks(f, H)
    if not _coverable(masks, full):
        return INFINITE
    for k in range(1, len(H) + 1):
        for combo in itertools.combinations(range(len(H)), k):
            union = 0
            for i in combo:
                union |= masks[i]
            if union == full:
                return PropernessResult(k, combo)
    raise AssertionError("unreachable: coverable class has a cover")


@dataclass(frozen=True)
class LearnerProperness:
    """Max properness over a supplied sample corpus.

    Always a lower bound on the supremum over all realizable samples.
    """

    value: float
    worst_sample: int | None
    cover: tuple[int, ...] | None
    lower_bound: bool = True

    def to_json(self) -> dict:
        return {
            "value": "inf" if math.isinf(self.value) else int(self.value),
            "worst_sample": self.worst_sample,
            "cover": None if self.cover is None else list(self.cover),
            "lower_bound": self.lower_bound,
        }


def learner_properness(A, H: ExplicitClass, samples: Sequence[TrainingSequence]) -> LearnerProperness:
    best = LearnerProperness(0, None, None)
    for j, S in enumerate(samples):
        if not is_realizable(H, S):
            raise InvalidInput(f"sample {j} is not realizable by the class")
        res = properness_exact(A(S), H)
        if res.value > best.value:
            best = LearnerProperness(res.value, j, res.cover)
            if math.isinf(res.value):
                break
    return best
