"""Brute-force VC, Graph and DS dimensions of explicit classes, with witnesses."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .classes import ExplicitClass
from .core import DomainMismatch, InvalidInput, Label, OverCapError, format_label


@dataclass(frozen=True)
class Caps:
    max_points: int | None = 16
    max_subset: int = 6


DEFAULT_CAPS = Caps()


@dataclass(frozen=True)
class ShatterWitness:
    kind: str
    points: tuple[int, ...]
    anchors: tuple[Label, ...] | None = None
    family: tuple[int, ...] | None = None
    behaviors: tuple[tuple, ...] | None = field(default=None, repr=False)

    def to_json(self) -> dict:
        out = {"kind": self.kind, "points": list(self.points)}
        if self.anchors is not None:
            out["anchors"] = [format_label(a) for a in self.anchors]
        if self.family is not None:
            out["family"] = list(self.family)
        return out


def _check_points(H: ExplicitClass, points: Sequence[int]) -> list[int]:
    pts = [int(p) for p in points]
    if len(set(pts)) != len(pts):
        raise InvalidInput("points must be distinct")
    for p in pts:
        if not 1 <= p <= H.domain_size:
            raise DomainMismatch(f"point {p} outside domain 1..{H.domain_size}")
    return pts


def _check_caps(H: ExplicitClass, caps: Caps) -> None:
    if caps.max_points is not None and H.domain_size > caps.max_points:
        raise OverCapError(f"domain has {H.domain_size} points, cap is {caps.max_points}")


def _max_possible(H: ExplicitClass) -> int:
    # 2^k distinct patterns need at least 2^k hypotheses
    return min(H.domain_size, int(math.floor(math.log2(len(H)))))


def _codes(E: np.ndarray) -> np.ndarray:
    """Pack boolean patterns along the last axis into integers."""
    k = E.shape[-1]
    return E.astype(np.int64) @ (np.int64(1) << np.arange(k, dtype=np.int64))


def _n_distinct_rows(codes: np.ndarray) -> np.ndarray:
    s = np.sort(codes, axis=-1)
    return 1 + np.count_nonzero(np.diff(s, axis=-1), axis=-1)


def _graph_anchor(B: np.ndarray) -> np.ndarray | None:
    """An anchor row under which ``B`` realizes all agree/disagree patterns.

    Only behaviours of the class need be tried: the all-agree pattern forces
    the anchor to be one of them.
    """
    k = B.shape[1]
    if k == 0:
        return B[0, :0]
    if B.shape[0] < 2**k:
        return None
    U = np.unique(B, axis=0)
    E = B[None, :, :] == U[:, None, :]
    counts = _n_distinct_rows(_codes(E))
    hit = np.flatnonzero(counts == 2**k)
    return U[hit[0]] if hit.size else None


def graph_shatters(H: ExplicitClass, anchored: Sequence[tuple[int, Label]]) -> bool:
    pts = _check_points(H, [x for x, _ in anchored])
    if not pts:
        return True
    ids = [H.labels.id_of(y) for _, y in anchored]
    if any(i is None for i in ids):
        # an anchor nobody outputs leaves the all-agree pattern unwitnessed
        return False
    B = H.matrix[:, [p - 1 for p in pts]]
    E = B == np.asarray(ids)[None, :]
    return len(np.unique(_codes(E))) == 2 ** len(pts)


def _hereditary_search(H: ExplicitClass, caps: Caps, test) -> tuple[int, tuple[int, ...], object]:
    """Largest subset on which ``test`` succeeds, using heredity to prune.

    ``test(cols) -> payload | None``. Every subset of a shattered set is
    shattered, so size-k candidates are built only from shattered (k-1)-sets.
    """
    _check_caps(H, caps)
    n = H.domain_size
    limit = _max_possible(H)
    best: tuple[int, tuple[int, ...], object] = (0, (), test(()))
    alive = {()}
    for k in range(1, limit + 1):
        if k > caps.max_subset:
            raise OverCapError(
                f"a set of size {k - 1} is shattered and the subset cap is {caps.max_subset}"
            )
        found = set()
        for combo in itertools.combinations(range(n), k):
            if any(combo[:j] + combo[j + 1:] not in alive for j in range(k)):
                continue
            payload = test(combo)
            if payload is not None:
                if not found:
                    best = (k, combo, payload)
                found.add(combo)
        if not found:
            break
        alive = found
    return best


def graph_dimension(H: ExplicitClass, caps: Caps = DEFAULT_CAPS) -> tuple[int, ShatterWitness]:
    M = H.matrix

    def test(cols):
        return _graph_anchor(M[:, list(cols)])

    k, cols, anchor = _hereditary_search(H, caps, test)
    vals = H.labels.values
    witness = ShatterWitness(
        "graph",
        tuple(c + 1 for c in cols),
        anchors=tuple(vals[i] for i in np.asarray(anchor).tolist()),
    )
    return k, witness


def ds_kernel(behaviors: np.ndarray, rng: np.random.Generator | None = None) -> np.ndarray:
    """Indices of the largest family in which every row has an i-neighbour for every i.

    Rows lacking some i-neighbour are deleted until a fixpoint. With ``rng``
    the deletions happen one at a time in random order; the fixpoint is the
    same either way because the union of valid families is valid.
    """
    B = np.asarray(behaviors)
    if B.ndim != 2:
        raise InvalidInput("behaviours must be a 2-d array of distinct rows")
    k = B.shape[1]
    alive = np.ones(B.shape[0], dtype=bool)
    while True:
        idx = np.flatnonzero(alive)
        if idx.size == 0 or k == 0:
            return idx
        bad = np.zeros(idx.size, dtype=bool)
        for i in range(k):
            rest = np.delete(B[idx], i, axis=1)
            _, inv, cnt = np.unique(rest, axis=0, return_inverse=True, return_counts=True)
            bad |= cnt[inv.ravel()] < 2
        if not bad.any():
            return idx
        if rng is None:
            alive[idx[bad]] = False
        else:
            alive[rng.choice(idx[bad])] = False


def _ds_family(M: np.ndarray, cols) -> np.ndarray | None:
    B = M[:, list(cols)]
    U, first = np.unique(B, axis=0, return_index=True)
    keep = ds_kernel(U)
    return np.sort(first[keep]) if keep.size else None


def ds_shatters(H: ExplicitClass, points: Sequence[int]) -> bool:
    pts = _check_points(H, points)
    return _ds_family(H.matrix, [p - 1 for p in pts]) is not None


def ds_dimension(H: ExplicitClass, caps: Caps = DEFAULT_CAPS) -> tuple[int, ShatterWitness]:
    M = H.matrix
    k, cols, family = _hereditary_search(H, caps, lambda cols: _ds_family(M, cols))
    witness = ShatterWitness(
        "ds",
        tuple(c + 1 for c in cols),
        family=tuple(int(i) for i in family),
        behaviors=tuple(tuple(r) for r in M[np.asarray(family)][:, list(cols)].tolist()),
    )
    return k, witness


def vc_dimension(H: ExplicitClass, caps: Caps = DEFAULT_CAPS) -> int:
    """Plain VC dimension by behaviour counting (binary classes only)."""
    if H.n_labels > 2:
        raise InvalidInput(f"VC dimension needs a binary class, got {H.n_labels} labels")
    _check_caps(H, caps)
    M = H.matrix
    best = 0
    for k in range(1, _max_possible(H) + 1):
        if k > caps.max_subset:
            raise OverCapError(f"subset cap {caps.max_subset} reached")
        if not any(
            len(np.unique(M[:, list(c)], axis=0)) == 2**k
            for c in itertools.combinations(range(H.domain_size), k)
        ):
            break
        best = k
    return best
