"""Plain-text class and function files.

Class file::

    points=<n> labels=<k> hyps=<h>
    <n label ids>        # one row per hypothesis, ids in 0..k-1

Function file: one row of ``n`` label ids, optionally preceded by a
``points=<n>`` header. Lines starting with ``#`` are comments; the writer
uses them to record what each label id stands for.
"""

from __future__ import annotations

import io
import re
from pathlib import Path
from typing import TextIO

import numpy as np

from .classes import ExplicitClass
from .core import InvalidInput, LabelSpace, TableHypothesis, format_label

_HEADER = re.compile(r"^points=(\d+)\s+labels=(\d+)\s+hyps=(\d+)$")


def _lines(text: str) -> list[str]:
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


def dumps_class(H: ExplicitClass) -> str:
    out = io.StringIO()
    out.write(f"points={H.domain_size} labels={H.n_labels} hyps={len(H)}\n")
    for i, v in enumerate(H.labels.values):
        out.write(f"# label {i} = {format_label(v)}\n")
    for row in H.matrix.tolist():
        out.write(" ".join(map(str, row)) + "\n")
    return out.getvalue()


def write_class(H: ExplicitClass, dest: str | Path | TextIO) -> None:
    text = dumps_class(H)
    if hasattr(dest, "write"):
        dest.write(text)
    else:
        Path(dest).write_text(text)


def loads_class(text: str, name: str = "file") -> ExplicitClass:
    lines = _lines(text)
    if not lines:
        raise InvalidInput("empty class file")
    m = _HEADER.match(lines[0])
    if not m:
        raise InvalidInput(f"bad class header {lines[0]!r}")
    n, k, h = map(int, m.groups())
    rows = lines[1:]
    if len(rows) != h:
        raise InvalidInput(f"header promises {h} hypotheses, found {len(rows)}")
    try:
        M = np.array([[int(t) for t in r.split()] for r in rows], dtype=np.int64)
    except ValueError as exc:
        raise InvalidInput(f"non-integer label id: {exc}") from None
    if M.shape != (h, n):
        raise InvalidInput(f"expected {h} rows of {n} ids")
    if M.size and (M.min() < 0 or M.max() >= k):
        raise InvalidInput(f"label ids must lie in 0..{k - 1}")
    return ExplicitClass(M, LabelSpace(range(k)), name=name)


def read_class(path: str | Path) -> ExplicitClass:
    return loads_class(Path(path).read_text(), name=Path(path).stem)


def loads_function(text: str) -> TableHypothesis:
    lines = _lines(text)
    if lines and lines[0].startswith("points="):
        n = int(lines[0].split("=", 1)[1])
        lines = lines[1:]
    else:
        n = None
    if len(lines) != 1:
        raise InvalidInput("function file must hold exactly one row of label ids")
    try:
        row = [int(t) for t in lines[0].split()]
    except ValueError as exc:
        raise InvalidInput(f"non-integer label id: {exc}") from None
    if n is not None and len(row) != n:
        raise InvalidInput(f"header promises {n} points, row has {len(row)}")
    return TableHypothesis(row)


def read_function(path: str | Path) -> TableHypothesis:
    return loads_function(Path(path).read_text())
