import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from erm_majorities.classes import ExplicitClass
from erm_majorities.constructions import cantor_explicit, two_constant_class
from erm_majorities.core import STAR, DomainMismatch, InvalidInput, LabelSpace, OverCapError
from erm_majorities.dimensions import (
    Caps,
    ds_dimension,
    ds_kernel,
    ds_shatters,
    graph_dimension,
    graph_shatters,
    vc_dimension,
)

from conftest import binary_classes, explicit_classes
from oracles import naive_ds_dimension, naive_graph_dimension, naive_vc, table


def test_full_cube(cube3):
    assert vc_dimension(cube3) == 3
    assert graph_dimension(cube3)[0] == 3
    assert ds_dimension(cube3)[0] == 3


def test_two_constant_class():
    H = two_constant_class(5)
    assert graph_shatters(H, [(1, 0)])
    assert not graph_shatters(H, [(1, 0), (2, 0)])
    assert graph_dimension(H)[0] == 1
    assert ds_dimension(H)[0] == 1
    assert vc_dimension(H) == 1


def test_singleton_class_has_dimension_zero(singleton):
    assert graph_dimension(singleton)[0] == 0
    assert ds_dimension(singleton)[0] == 0


def test_empty_anchored_set_is_shattered(cube2):
    assert graph_shatters(cube2, [])


def test_unknown_anchor_label_does_not_shatter(cube2):
    assert not graph_shatters(cube2, [(1, 7)])


def test_duplicate_points_rejected(cube2):
    with pytest.raises(InvalidInput):
        graph_shatters(cube2, [(1, 0), (1, 1)])
    with pytest.raises(DomainMismatch):
        ds_shatters(cube2, [3])


@pytest.mark.parametrize("d,n", [(1, 6), (2, 8)])
def test_cantor_dimensions(d, n):
    H = cantor_explicit(d, n)
    k, wit = graph_dimension(H)
    assert k == d
    assert graph_shatters(H, list(zip(wit.points, wit.anchors)))
    assert ds_dimension(H)[0] == 1
    # every point is DS-shattered alone; no pair is
    assert all(ds_shatters(H, [x]) for x in range(1, n + 1))
    assert not any(ds_shatters(H, p) for p in itertools.combinations(range(1, n + 1), 2))


def test_cantor_star_anchor_shatters():
    H = cantor_explicit(2, 6)
    assert graph_shatters(H, [(1, STAR), (2, STAR)])
    # h_A with A = {1, 2} agrees with a shared set anchor on both points or neither
    assert not graph_shatters(H, [(1, {1, 2}), (2, {1, 2})])
    assert not graph_shatters(H, [(1, STAR), (2, STAR), (3, STAR)])


def test_caps_raise():
    H = two_constant_class(20)
    with pytest.raises(OverCapError):
        graph_dimension(H, Caps(max_points=16))
    assert graph_dimension(H, Caps(max_points=None))[0] == 1
    cube = ExplicitClass(np.array(list(itertools.product([0, 1], repeat=4))), LabelSpace([0, 1]))
    with pytest.raises(OverCapError):
        graph_dimension(cube, Caps(max_subset=2))
    with pytest.raises(OverCapError):
        vc_dimension(cube, Caps(max_subset=2))


def test_vc_rejects_multiclass(singleton):
    with pytest.raises(InvalidInput):
        vc_dimension(singleton)


@settings(max_examples=60)
@given(explicit_classes(max_points=4, max_labels=3, max_hyps=10))
def test_graph_dimension_matches_naive(H):
    k, wit = graph_dimension(H)
    assert k == naive_graph_dimension(table(H), H.domain_size)
    assert len(wit.points) == k
    assert graph_shatters(H, list(zip(wit.points, wit.anchors)))


@settings(max_examples=40)
@given(explicit_classes(max_points=4, max_labels=3, max_hyps=8))
def test_ds_dimension_matches_naive(H):
    k, wit = ds_dimension(H)
    assert k == naive_ds_dimension(table(H), H.domain_size)
    assert ds_shatters(H, wit.points)


@settings(max_examples=60)
@given(explicit_classes(max_points=4, max_labels=3, max_hyps=10))
def test_ds_witness_family_is_valid(H):
    k, wit = ds_dimension(H)
    fam = set(wit.behaviors)
    assert fam
    for f in fam:
        for i in range(k):
            assert any(g[i] != f[i] and g[:i] + g[i + 1:] == f[:i] + f[i + 1:] for g in fam)


@settings(max_examples=60)
@given(explicit_classes(max_points=5, max_labels=4, max_hyps=12))
def test_ds_at_most_graph(H):
    assert ds_dimension(H)[0] <= graph_dimension(H)[0]


@settings(max_examples=60)
@given(binary_classes())
def test_binary_dimensions_agree(H):
    v = vc_dimension(H)
    assert v == naive_vc(table(H), H.domain_size)
    assert graph_dimension(H)[0] == v
    assert ds_dimension(H)[0] == v


@settings(max_examples=40)
@given(explicit_classes(max_points=5, max_labels=3, max_hyps=12), st.integers(0, 2**32 - 1))
def test_graph_witness_no_larger_set_shatters(H, seed):
    # spot-check supersets of the witness with random anchors drawn from the class
    k, wit = graph_dimension(H)
    rng = np.random.default_rng(seed)
    rest = [x for x in range(1, H.domain_size + 1) if x not in wit.points]
    for _ in range(5):
        if not rest:
            break
        extra = int(rng.choice(rest))
        pts = list(wit.points) + [extra]
        for row in H.matrix:
            anchors = [H.labels.value(int(row[p - 1])) for p in pts]
            assert not graph_shatters(H, list(zip(pts, anchors)))


@settings(max_examples=50)
@given(st.integers(1, 4), st.integers(2, 3), st.integers(0, 2**32 - 1))
def test_ds_kernel_order_independent(k, n_labels, seed):
    rng = np.random.default_rng(seed)
    rows = np.unique(rng.integers(0, n_labels, size=(12, k)), axis=0)
    batch = ds_kernel(rows)
    for s in range(3):
        assert np.array_equal(ds_kernel(rows, np.random.default_rng(seed + s)), batch)
