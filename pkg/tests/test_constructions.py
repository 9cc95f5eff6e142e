import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from erm_majorities.constructions import (
    EPS_ALT_LIMIT,
    EPS_LIMIT,
    cantor_explicit,
    cantor_instance,
    coupon_mean,
    coupon_mean_lower_bound,
    coupon_trial,
    geometric_weights,
    properness_witness,
    two_constant_class,
    witness_union,
)
from erm_majorities.core import DOLLAR, STAR, InvalidInput, OverCapError, RandomSource, SetHypothesis
from erm_majorities.dimensions import ds_dimension, graph_dimension


def test_cantor_instance_sizes():
    inst = cantor_instance(10, 0.01)
    assert inst.domain_size == 250
    assert len(inst.distribution) == 250
    assert all(y == STAR for _, y in inst.distribution.pairs)
    with pytest.warns(UserWarning):
        assert cantor_instance(3, 0.05).domain_size == 15


def test_eps_thresholds():
    assert EPS_LIMIT == 0.01
    assert EPS_ALT_LIMIT == pytest.approx(1 / (8 * math.e ** (math.sqrt(2) + 1)))


def test_cantor_explicit_size():
    assert len(cantor_explicit(2, 8)) == 1 + 8 + 28
    assert len(cantor_explicit(0, 5)) == 1
    with pytest.raises(OverCapError):
        cantor_explicit(5, 40, cap=100)


@given(st.integers(1, 5), st.integers(0, 10), st.data())
def test_cantor_labels_identify_the_set(d, extra, data):
    n = d + extra
    A = data.draw(st.sets(st.integers(1, n), max_size=d))
    B = data.draw(st.sets(st.integers(1, n), max_size=d))
    hA, hB = SetHypothesis(A, n), SetHypothesis(B, n)
    non_star = {v for v in hA.values() if v != STAR}
    assert len([v for v in hA.values() if v != STAR]) <= d
    assert non_star <= {frozenset(A)}
    if A != B:
        assert frozenset(A) not in hB.values()


def test_witness_sizes():
    w4 = properness_witness(4)
    assert len(w4.cls) == math.comb(4, 2) == 6
    assert all(list(h.values()).count(STAR) == 2 for h in w4.cls)
    assert len(properness_witness(9).cls) == 84
    with pytest.raises(InvalidInput):
        properness_witness(5)


@pytest.mark.parametrize("d", [4, 9])
def test_witness_star_coverage(d):
    # union of star sets of any p members has at most p * sqrt(d) points
    w = properness_witness(d)
    root = math.isqrt(d)
    star_sets = [w.star_set(i) for i in range(len(w.subsets))]
    for p in (1, 2, 3):
        worst = max(len(frozenset().union(*c)) for c in itertools.combinations(star_sets, p))
        assert worst <= p * root


def test_witness_distribution():
    w = properness_witness(4)
    D = w.distribution_for({1, 2})
    assert [x for x, _ in D.pairs] == [3, 4]
    assert all(y == STAR for _, y in D.pairs)


def test_witness_union_blocks():
    U = witness_union([4, 9])
    assert U.domain_size == 13
    assert len(U) == 6 + 84
    first = U[0].values()
    assert all(v == DOLLAR for v in first[4:])
    assert ds_dimension(U)[0] <= 1
    assert graph_dimension(U)[0] >= 1


def test_two_constant():
    H = two_constant_class(3)
    assert [h.values() for h in H] == [(0, 0, 0), (1, 1, 1)]


def test_geometric_weights():
    w = geometric_weights(4, 0.5)
    assert w == [1, 0.5, 0.25, 0.125]
    with pytest.raises(InvalidInput):
        geometric_weights(4, 0)


def test_coupon_trivial_case():
    for s in range(20):
        assert coupon_trial((30, 29), RandomSource(s)) == 1


def test_coupon_exact_mean_oracle():
    exact = 250 * sum(Fraction(1, i) for i in range(11, 251))
    assert coupon_mean(250, 10) == pytest.approx(float(exact), rel=1e-12)
    assert coupon_mean_lower_bound(250, 10) <= coupon_mean(250, 10)


@settings(max_examples=25)
@given(st.integers(2, 40), st.integers(0, 2**31))
def test_coupon_trial_matches_scalar_simulation(n, seed):
    d = n // 3
    rng_a = np.random.default_rng(seed)
    fast = coupon_trial((n, d), rng_a)
    # replay the same stream one draw at a time
    rng_b = np.random.default_rng(seed)
    chunk = max(16, int(coupon_mean(n, d)))
    draws, seen = 0, set()
    while True:
        block = rng_b.integers(0, n, size=chunk)
        done = False
        for v in block:
            draws += 1
            seen.add(int(v))
            if len(seen) == n - d:
                done = True
                break
        if done:
            break
    assert fast == draws


def test_coupon_rejects_bad_d():
    with pytest.raises(InvalidInput):
        coupon_trial((5, 5), RandomSource(0))
