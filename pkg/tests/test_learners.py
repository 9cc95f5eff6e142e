import pytest
from hypothesis import given
from hypothesis import strategies as st

from erm_majorities.classes import CantorClass, ExplicitClass
from erm_majorities.constructions import two_constant_class
from erm_majorities.core import (
    STAR,
    InvalidInput,
    NoConsistentHypothesis,
    SetHypothesis,
    TableHypothesis,
    TrainingSequence,
    is_consistent,
)
from erm_majorities.learners import (
    BadCantorERM,
    CantorParams,
    FirstConsistentERM,
    FixedLearner,
    erm_bad_cantor,
    erm_first_consistent,
)


@pytest.mark.parametrize("d,eps,n", [(10, 0.01, 250), (3, 0.05, 15), (1, 1.0, 1)])
def test_domain_size_from_eps(d, eps, n):
    assert CantorParams.from_eps(d, eps).domain_size == n


def test_erm_empty_sample_returns_first_hypothesis():
    H = two_constant_class(3)
    assert erm_first_consistent(H, TrainingSequence()) == H[0]


def test_erm_singleton_class():
    H = ExplicitClass.from_tables([[0, 1, 2]])
    S = TrainingSequence(((2, 1),))
    assert erm_first_consistent(H, S) == TableHypothesis([0, 1, 2])


def test_erm_non_realizable():
    H = two_constant_class(3)
    with pytest.raises(NoConsistentHypothesis):
        erm_first_consistent(H, TrainingSequence(((1, 0), (2, 1))))


def test_erm_bad_examples():
    p = CantorParams(3, 15)
    assert erm_bad_cantor(p, TrainingSequence()) == SetHypothesis({1, 2, 3}, 15)
    p2 = CantorParams(2, 4)
    assert erm_bad_cantor(p2, TrainingSequence(((2, STAR),))) == SetHypothesis({1, 3}, 4)
    full = TrainingSequence(tuple((x, STAR) for x in range(1, 5)))
    assert erm_bad_cantor(p2, full) == SetHypothesis((), 4)


def test_erm_bad_takes_remaining_points_when_fewer_than_d():
    p = CantorParams(3, 5)
    S = TrainingSequence(((1, STAR), (2, STAR), (4, STAR)))
    assert erm_bad_cantor(p, S) == SetHypothesis({3, 5}, 5)


def test_erm_bad_rejects_set_labels():
    with pytest.raises(InvalidInput):
        erm_bad_cantor(CantorParams(2, 4), TrainingSequence(((1, {1}),)))


@given(st.integers(1, 6), st.integers(0, 20), st.data())
def test_erm_bad_is_an_erm(d, extra, data):
    n = d + extra
    p = CantorParams(d, n)
    xs = data.draw(st.lists(st.integers(1, n), max_size=3 * n))
    S = TrainingSequence(tuple((x, STAR) for x in xs))
    h = BadCantorERM(p)(S)
    assert is_consistent(h, S)
    assert h in CantorClass(d, n)
    unseen = [x for x in range(1, n + 1) if x not in set(xs)]
    assert sorted(h.subset) == unseen[:d]


@given(st.integers(1, 4), st.integers(0, 8), st.data())
def test_cantor_find_consistent(d, extra, data):
    n = d + extra
    H = CantorClass(d, n)
    A = data.draw(st.sets(st.integers(1, n), max_size=d))
    h = SetHypothesis(A, n)
    xs = data.draw(st.lists(st.integers(1, n), max_size=10))
    S = TrainingSequence(tuple((x, h(x)) for x in xs))
    g = FirstConsistentERM(H)(S)
    assert is_consistent(g, S)
    assert g in H


def test_fixed_learner():
    h = TableHypothesis([0, 1])
    H = two_constant_class(2)
    L = FixedLearner(h, H)
    assert L(TrainingSequence()) is h
    assert not L.proper
    assert FixedLearner(H[0], H).proper


@given(st.integers(1, 6), st.integers(1, 15), st.data())
def test_unseen_sets_shrink_with_more_data(d, n_extra, data):
    from erm_majorities.learners import unseen_points

    n = d + n_extra
    xs = data.draw(st.lists(st.integers(1, n), max_size=2 * n))
    S = TrainingSequence(tuple((x, STAR) for x in xs))
    idx = data.draw(st.lists(st.integers(1, max(1, len(xs))), max_size=len(xs))) if xs else []
    sub = S.take(idx)
    first_d = set(range(1, d + 1))
    # a sub-sequence sees fewer points, so it leaves at least as much of [d] unseen
    assert set(unseen_points(n, S)) <= set(unseen_points(n, sub))
    assert set(unseen_points(n, S)) & first_d <= set(unseen_points(n, sub)) & first_d
