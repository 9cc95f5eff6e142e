"""Finite hypothesis classes: explicit label matrices and the implicit Cantor family."""

from __future__ import annotations

import itertools
import math
from typing import Iterable, Iterator, Sequence

import numpy as np

from .core import (
    STAR,
    Hypothesis,
    InvalidInput,
    LabelSpace,
    OverCapError,
    SetHypothesis,
    TableHypothesis,
    TrainingSequence,
    canonical_label,
)


class ExplicitClass:
    """A class stored as an ``(n_hypotheses, n_points)`` matrix of label ids.

    Rows are kept in first-seen order with duplicates removed; that order is
    the stable enumeration order used for ERM tie-breaking.
    """

    kind = "explicit"

    def __init__(self, matrix, labels: LabelSpace, name: str = "explicit", meta: dict | None = None):
        M = np.asarray(matrix, dtype=np.int64)
        if M.ndim != 2 or M.shape[0] == 0 or M.shape[1] == 0:
            raise InvalidInput("class matrix must be a nonempty 2-d array")
        if M.min() < 0 or M.max() >= len(labels):
            raise InvalidInput("label id outside the label space")
        _, first = np.unique(M, axis=0, return_index=True)
        self.matrix = M[np.sort(first)]
        self.matrix.setflags(write=False)
        self.labels = labels
        self.name = name
        self.meta = dict(meta or {})
        self._rows = {tuple(r): i for i, r in enumerate(self.matrix.tolist())}

    @classmethod
    def from_tables(cls, tables: Iterable[Sequence], name: str = "explicit", meta: dict | None = None,
                    labels: LabelSpace | None = None) -> "ExplicitClass":
        labels = LabelSpace() if labels is None else labels
        rows = [[labels.intern(v) for v in t] for t in tables]
        widths = {len(r) for r in rows}
        if len(widths) != 1:
            raise InvalidInput("all hypotheses must be total over the same domain")
        return cls(np.array(rows), labels, name=name, meta=meta)

    @classmethod
    def from_hypotheses(cls, hyps: Iterable[Hypothesis], **kw) -> "ExplicitClass":
        return cls.from_tables((h.values() for h in hyps), **kw)

    @property
    def domain_size(self) -> int:
        return self.matrix.shape[1]

    @property
    def n_labels(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return self.matrix.shape[0]

    def __getitem__(self, i: int) -> TableHypothesis:
        vals = self.labels.values
        return TableHypothesis([vals[j] for j in self.matrix[i]])

    def __iter__(self) -> Iterator[TableHypothesis]:
        return (self[i] for i in range(len(self)))

    def row_of(self, h: Hypothesis) -> tuple[int, ...] | None:
        if h.domain_size != self.domain_size:
            return None
        row = []
        for v in h.values():
            ident = self.labels.id_of(v)
            if ident is None:
                return None
            row.append(ident)
        return tuple(row)

    def index_of(self, h: Hypothesis) -> int | None:
        row = self.row_of(h)
        return None if row is None else self._rows.get(row)

    def __contains__(self, h: Hypothesis) -> bool:
        return self.index_of(h) is not None

    def consistent_mask(self, S: TrainingSequence) -> np.ndarray:
        mask = np.ones(len(self), dtype=bool)
        for x, y in S:
            if not (isinstance(x, (int, np.integer)) and 1 <= x <= self.domain_size):
                return np.zeros(len(self), dtype=bool)
            ident = self.labels.id_of(y)
            if ident is None:
                return np.zeros(len(self), dtype=bool)
            mask &= self.matrix[:, x - 1] == ident
        return mask

    def find_consistent(self, S: TrainingSequence) -> TableHypothesis | None:
        hits = np.flatnonzero(self.consistent_mask(S))
        return self[int(hits[0])] if hits.size else None

    def label_table(self) -> list[list]:
        vals = self.labels.values
        return [[vals[j] for j in row] for row in self.matrix.tolist()]

    def __repr__(self) -> str:
        return f"ExplicitClass({self.name!r}, hyps={len(self)}, points={self.domain_size}, labels={self.n_labels})"


def cantor_class_size(d: int, domain_size: int) -> int:
    return sum(math.comb(domain_size, k) for k in range(min(d, domain_size) + 1))


class CantorClass:
    """``{h_A : A ⊆ [n], |A| <= d}`` without enumeration.

    Set labels identify their hypothesis, so consistency search only has to
    check the single set that appears among the sample's non-``*`` labels.
    """

    kind = "implicit"

    def __init__(self, d: int, domain_size: int):
        if d < 0 or domain_size < 1:
            raise InvalidInput("need d >= 0 and a nonempty domain")
        if d > domain_size:
            raise InvalidInput(f"d={d} exceeds domain size {domain_size}")
        self.d = d
        self.domain_size = domain_size
        self.meta = {"family": "cantor", "d": d, "domain_size": domain_size}

    def __len__(self) -> int:
        return cantor_class_size(self.d, self.domain_size)

    def _subset_of(self, values: Sequence) -> frozenset | None:
        sets = {v for v in values if v != STAR}
        if not sets:
            return frozenset()
        if len(sets) > 1:
            return None
        (A,) = sets
        if not isinstance(A, frozenset) or len(A) > self.d:
            return None
        return A

    def __contains__(self, h: Hypothesis) -> bool:
        if h.domain_size != self.domain_size:
            return False
        if isinstance(h, SetHypothesis):
            return len(h.subset) <= self.d
        values = h.values()
        A = self._subset_of(values)
        if A is None or not all(1 <= v <= self.domain_size for v in A):
            return False
        return all(v == (A if x in A else STAR) for x, v in enumerate(values, start=1))

    def find_consistent(self, S: TrainingSequence) -> SetHypothesis | None:
        for x, _ in S:
            if not (isinstance(x, (int, np.integer)) and 1 <= x <= self.domain_size):
                return None
        labels = [canonical_label(y) for _, y in S]
        A = self._subset_of(labels)
        if A is None or not all(isinstance(v, (int, np.integer)) and 1 <= v <= self.domain_size for v in A):
            return None
        for x, y in S:
            if (y == STAR) == (x in A):
                return None
        return SetHypothesis(A, self.domain_size)

    def hypotheses(self) -> Iterator[SetHypothesis]:
        """Enumerate by subset size, then lexicographically."""
        pts = range(1, self.domain_size + 1)
        for k in range(self.d + 1):
            for A in itertools.combinations(pts, k):
                yield SetHypothesis(A, self.domain_size)

    def __iter__(self):
        return self.hypotheses()

    def explicit(self, cap: int = 10_000) -> ExplicitClass:
        size = len(self)
        if size > cap:
            raise OverCapError(f"Cantor class has {size} hypotheses, cap is {cap}")
        labels = LabelSpace([STAR])
        return ExplicitClass.from_hypotheses(self.hypotheses(), name="cantor", meta=dict(self.meta), labels=labels)

    def __repr__(self) -> str:
        return f"CantorClass(d={self.d}, domain_size={self.domain_size})"
