"""Index-only splitting schemes: Hanneke's recursion, bagging, and three disjoint thirds.

A plan depends on the sequence length (and randomness) alone, never on the
examples, so one plan can be replayed against ``S`` and against its lifted
twin ``((x, y), 1)``. Indices are 1-based.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import InvalidInput, RandomSource, TrainingSequence


@dataclass(frozen=True)
class SplitPlan:
    m: int
    index_sequences: tuple[tuple[int, ...], ...]
    scheme: str
    params: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.index_sequences)

    def to_json(self) -> dict:
        return {
            "scheme": self.scheme,
            "m": self.m,
            "params": self.params,
            "count": len(self),
            "index_sequences": [list(s) for s in self.index_sequences],
        }


def _hanneke(S: list[int], T: list[int], out: list[tuple[int, ...]]) -> None:
    if len(S) <= 3:
        out.append(tuple(S + T))
        return
    q = len(S) // 4
    k = len(S) - 3 * q
    S0, S1, S2, S3 = S[:k], S[k:k + q], S[k + q:k + 2 * q], S[k + 2 * q:]
    _hanneke(S0, S2 + S3 + T, out)
    _hanneke(S0, S1 + S3 + T, out)
    _hanneke(S0, S1 + S2 + T, out)


def hanneke_split(m: int) -> SplitPlan:
    if m < 1:
        raise InvalidInput("hanneke_split needs m >= 1")
    out: list[tuple[int, ...]] = []
    _hanneke(list(range(1, m + 1)), [], out)
    return SplitPlan(m, tuple(out), "hanneke")


def hanneke_count(m: int) -> int:
    """Number of sub-sequences Hanneke's scheme produces for length ``m``."""
    count = 1
    while m > 3:
        m -= 3 * (m // 4)
        count *= 3
    return count


def bagging_count(m: int, delta: float) -> int:
    return math.ceil(18 * math.log(2 * m / delta))


def bagging_split(m: int, rho: float, delta: float, r: RandomSource | np.random.Generator) -> SplitPlan:
    if m < 1:
        raise InvalidInput("bagging_split needs m >= 1")
    if not 0.02 <= rho <= 1:
        raise InvalidInput(f"rho={rho} outside [0.02, 1]")
    if not 0 < delta < 1:
        raise InvalidInput(f"delta={delta} outside (0, 1)")
    rng = r.generator() if isinstance(r, RandomSource) else r
    n = bagging_count(m, delta)
    size = math.floor(rho * m)
    draws = rng.integers(1, m + 1, size=(n, size))
    params = {"rho": rho, "delta": delta}
    if isinstance(r, RandomSource):
        params.update(seed=r.seed, stream=list(r.stream))
    return SplitPlan(m, tuple(tuple(row) for row in draws.tolist()), "bagging", params)


def three_split(m: int) -> SplitPlan:
    if m < 3:
        raise InvalidInput("three_split needs m >= 3")
    q = m // 3
    return SplitPlan(m, tuple(tuple(range(1 + j * q, 1 + (j + 1) * q)) for j in range(3)), "three")


def identity_split(m: int) -> SplitPlan:
    return SplitPlan(m, (tuple(range(1, m + 1)),), "none")


def make_plan(scheme: str, m: int, *, rho: float = 1.0, delta: float = 0.05,
              r: RandomSource | np.random.Generator | None = None) -> SplitPlan:
    if scheme == "hanneke":
        return hanneke_split(m)
    if scheme == "three":
        return three_split(m)
    if scheme == "bagging":
        if r is None:
            raise InvalidInput("bagging needs a random source")
        return bagging_split(m, rho, delta, r)
    if scheme == "none":
        return identity_split(m)
    raise InvalidInput(f"unknown splitting scheme {scheme!r}")


def materialize(plan: SplitPlan, S: TrainingSequence) -> list[TrainingSequence]:
    if len(S) != plan.m:
        raise InvalidInput(f"plan built for length {plan.m}, sequence has {len(S)}")
    return [S.take(seq) for seq in plan.index_sequences]
