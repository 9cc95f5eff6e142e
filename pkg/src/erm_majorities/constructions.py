"""Hard instances: the Cantor class, the properness witness class, two constants.

Also the coupon-collector simulation behind the single-ERM lower bound.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .classes import CantorClass, ExplicitClass, cantor_class_size
from .core import (
    DOLLAR,
    STAR,
    InvalidInput,
    LabeledDistribution,
    LabelSpace,
    OverCapError,
    RandomSource,
    SetHypothesis,
)
from .learners import CantorParams

DEFAULT_CAP = 10_000

# Upper limit on eps for the lower-bound construction, plus the slightly
# looser 1/(8 e^(sqrt2 + 1)) that also appears for it. Only the first warns.
EPS_LIMIT = 1 / 100
EPS_ALT_LIMIT = 1 / (8 * math.exp(math.sqrt(2) + 1))


@dataclass(frozen=True)
class CantorInstance:
    params: CantorParams
    cls: CantorClass
    target: SetHypothesis
    distribution: LabeledDistribution

    @property
    def d(self) -> int:
        return self.params.d

    @property
    def domain_size(self) -> int:
        return self.params.domain_size


def cantor_instance(d: int, eps: float, weights=None) -> CantorInstance:
    """Cantor class over ``[ceil(d / 4 eps)]`` with the all-``*`` target.

    ``weights`` overrides the uniform marginal.
    """
    if d < 1:
        raise InvalidInput("d must be at least 1")
    if eps > EPS_LIMIT:
        warnings.warn(f"eps={eps} exceeds 1/100; the lower bound is not claimed there", stacklevel=2)
    params = CantorParams.from_eps(d, eps)
    return _cantor(params, weights)


def cantor_instance_sized(d: int, domain_size: int, weights=None) -> CantorInstance:
    return _cantor(CantorParams(d, domain_size), weights)


def _cantor(params: CantorParams, weights) -> CantorInstance:
    cls = CantorClass(params.d, params.domain_size)
    target = SetHypothesis((), params.domain_size)
    D = LabeledDistribution.from_target(target, weights=weights)
    return CantorInstance(params, cls, target, D)


def cantor_explicit(d: int, domain_size: int, cap: int = DEFAULT_CAP) -> ExplicitClass:
    if cantor_class_size(d, domain_size) > cap:
        raise OverCapError(f"Cantor class ({d}, {domain_size}) exceeds cap {cap}")
    return CantorClass(d, domain_size).explicit(cap)


def geometric_weights(n: int, ratio: float) -> list[float]:
    """Masses proportional to ``ratio ** (x - 1)``: point 1 is heaviest.

    Every dyadic mass scale is populated, so the unseen mass after ``m``
    draws keeps shrinking like ``1/m`` across the whole grid.
    """
    if not 0 < ratio <= 1:
        raise InvalidInput(f"ratio={ratio} outside (0, 1]")
    return [ratio ** (x - 1) for x in range(1, n + 1)]


@dataclass(frozen=True)
class PropernessWitnessInstance:
    d: int
    root: int
    cls: ExplicitClass
    subsets: tuple[frozenset, ...]

    def distribution_for(self, A) -> LabeledDistribution:
        """Uniform over the complement of ``A``, every point labelled ``*``."""
        A = frozenset(A)
        rest = [x for x in range(1, self.d + 1) if x not in A]
        return LabeledDistribution(tuple(((x, STAR), 1 / len(rest)) for x in rest))

    def star_set(self, i: int) -> frozenset:
        return frozenset(range(1, self.d + 1)) - self.subsets[i]


def _witness_subsets(d: int, cap: int) -> tuple[int, list[tuple[int, ...]]]:
    root = math.isqrt(d)
    if d < 1 or root * root != d:
        raise InvalidInput(f"d={d} must be a positive perfect square")
    if math.comb(d, root) > cap:
        raise OverCapError(f"C({d}, {root}) exceeds cap {cap}")
    return root, list(itertools.combinations(range(1, d + 1), d - root))


def properness_witness(d: int, cap: int = DEFAULT_CAP) -> PropernessWitnessInstance:
    """``{h_A : A ⊆ [d], |A| = d - sqrt(d)}``; each member is ``*`` on sqrt(d) points."""
    root, subsets = _witness_subsets(d, cap)
    hyps = [SetHypothesis(A, d) for A in subsets]
    cls = ExplicitClass.from_hypotheses(
        hyps, name="witness", meta={"family": "witness", "d": d}, labels=LabelSpace([STAR])
    )
    return PropernessWitnessInstance(d, root, cls, tuple(frozenset(A) for A in subsets))


def witness_union(ds, cap: int = DEFAULT_CAP) -> ExplicitClass:
    """Several witness blocks on disjoint consecutive ranges; ``$`` off-block."""
    blocks, offset = [], 0
    for d in ds:
        blocks.append((offset, d, _witness_subsets(d, cap)[1]))
        offset += d
    n = offset
    tables = []
    for start, d, subsets in blocks:
        for A in subsets:
            shifted = frozenset(start + a for a in A)
            row = [DOLLAR] * n
            for x in range(start + 1, start + d + 1):
                row[x - 1] = shifted if x in shifted else STAR
            tables.append(row)
    return ExplicitClass.from_tables(
        tables, name="witness-union", meta={"family": "witness-union", "blocks": list(ds)},
        labels=LabelSpace([STAR, DOLLAR]),
    )


def two_constant_class(n: int) -> ExplicitClass:
    if n < 1:
        raise InvalidInput("domain must be nonempty")
    return ExplicitClass.from_tables([[0] * n, [1] * n], name="two-const",
                                     meta={"family": "two-const", "n": n}, labels=LabelSpace([0, 1]))


def coupon_trial(instance: CantorInstance | tuple[int, int], r: RandomSource | np.random.Generator) -> int:
    """Uniform draws from the domain until all but ``d`` points have been seen."""
    if isinstance(instance, CantorInstance):
        n, d = instance.domain_size, instance.d
    else:
        n, d = instance
    if not 0 <= d < n:
        raise InvalidInput(f"need 0 <= d < domain size, got d={d}, n={n}")
    rng = r.generator() if isinstance(r, RandomSource) else r
    target = n - d
    seen = np.zeros(n, dtype=bool)
    n_seen, draws = 0, 0
    chunk = max(16, int(coupon_mean(n, d)))
    while True:
        block = rng.integers(0, n, size=chunk)
        values, first = np.unique(block, return_index=True)
        fresh = ~seen[values]
        firsts = np.sort(first[fresh])
        need = target - n_seen
        if firsts.size >= need:
            return draws + int(firsts[need - 1]) + 1
        seen[values] = True
        n_seen += firsts.size
        draws += chunk


def coupon_mean(n: int, d: int) -> float:
    """Exact expected draw count, ``n * sum_{i=d+1}^{n} 1/i``."""
    return n * math.fsum(1 / i for i in range(d + 1, n + 1))


def coupon_mean_lower_bound(n: int, d: int) -> float:
    return n * math.log((n + 1) / (d + 1))


def coupon_variance_bound(n: int, d: int) -> float:
    return n * n / d


def random_class(n_points: int, n_labels: int, n_hyps: int, rng: np.random.Generator,
                 max_tries: int = 1000) -> ExplicitClass:
    """Uniformly random distinct label rows; used as a test corpus."""
    if n_hyps > n_labels**n_points:
        raise InvalidInput("more hypotheses requested than distinct functions exist")
    rows: list[tuple[int, ...]] = []
    seen: set[tuple[int, ...]] = set()
    for _ in range(max_tries * n_hyps):
        row = tuple(int(v) for v in rng.integers(0, n_labels, size=n_points))
        if row not in seen:
            seen.add(row)
            rows.append(row)
            if len(rows) == n_hyps:
                break
    return ExplicitClass(np.array(rows), LabelSpace(range(n_labels)), name="random",
                         meta={"family": "random", "n": n_points, "k": n_labels})
