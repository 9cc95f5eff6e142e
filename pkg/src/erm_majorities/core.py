"""Domains, labels, hypotheses, samples and distributions with exact loss.

Everything here is finite and immutable. Points are the integers ``1..n``.
Labels are arbitrary hashables; set-valued labels are ``frozenset`` so that
structurally equal sets compare (and hash) equal. The deliberate-error label
``BOTTOM`` lives outside every label space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Hashable, Iterable, Iterator, Sequence

import numpy as np

Label = Hashable
Example = tuple[Any, Label]

MASS_TOL = 1e-12


class ArtifactError(Exception):
    """Base class for errors raised by this package."""


class InvalidInput(ArtifactError, ValueError):
    pass


class DomainMismatch(ArtifactError, ValueError):
    pass


class NoConsistentHypothesis(ArtifactError):
    pass


class OverCapError(ArtifactError):
    """A brute-force search or materialization exceeded its configured cap."""


class _Bottom:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "BOTTOM"

    def __reduce__(self):
        return (_Bottom, ())


BOTTOM = _Bottom()
STAR = "*"
DOLLAR = "$"


def canonical_label(label: Label) -> Label:
    """Map set-like labels to ``frozenset``; atoms pass through."""
    if isinstance(label, (set, frozenset)):
        return frozenset(label)
    return label


def label_sort_key(label: Label) -> tuple:
    """Total order on labels: atoms (by type name, then value) before sets."""
    if isinstance(label, frozenset):
        return (1, len(label), tuple(sorted(label)))
    return (0, type(label).__name__, label)


def format_label(label: Label) -> str:
    if isinstance(label, frozenset):
        return "{" + ",".join(str(v) for v in sorted(label)) + "}"
    return str(label)


class LabelSpace:
    """Interning table mapping canonical labels to dense integer ids."""

    def __init__(self, labels: Iterable[Label] = ()):
        self._ids: dict[Label, int] = {}
        self._values: list[Label] = []
        for label in labels:
            self.intern(label)

    def intern(self, label: Label) -> int:
        if label is BOTTOM:
            raise InvalidInput("BOTTOM cannot be a member of a label space")
        key = canonical_label(label)
        ident = self._ids.get(key)
        if ident is None:
            ident = len(self._values)
            self._ids[key] = ident
            self._values.append(key)
        return ident

    def id_of(self, label: Label) -> int | None:
        if label is BOTTOM:
            return None
        return self._ids.get(canonical_label(label))

    def value(self, ident: int) -> Label:
        return self._values[ident]

    @property
    def values(self) -> tuple[Label, ...]:
        return tuple(self._values)

    def __contains__(self, label: Label) -> bool:
        return self.id_of(label) is not None

    def __len__(self) -> int:
        return len(self._values)

    def __iter__(self) -> Iterator[Label]:
        return iter(self._values)


@dataclass(frozen=True)
class Domain:
    """The points ``1..size``."""

    size: int

    def __post_init__(self):
        if self.size < 1:
            raise InvalidInput("domain must be nonempty")

    @property
    def points(self) -> range:
        return range(1, self.size + 1)

    def __contains__(self, x) -> bool:
        return isinstance(x, (int, np.integer)) and 1 <= x <= self.size

    def __iter__(self):
        return iter(self.points)

    def __len__(self) -> int:
        return self.size


class Hypothesis:
    """A total, deterministic map from a finite domain to labels."""

    domain_size: int

    def __call__(self, x) -> Label:
        raise NotImplementedError

    def values(self) -> tuple[Label, ...]:
        return tuple(self(x) for x in range(1, self.domain_size + 1))

    def _check(self, x) -> int:
        if not isinstance(x, (int, np.integer)) or not 1 <= x <= self.domain_size:
            raise DomainMismatch(f"point {x!r} outside domain 1..{self.domain_size}")
        return int(x)


class TableHypothesis(Hypothesis):
    """Explicit hypothesis: a dense label assignment over ``1..n``."""

    __slots__ = ("table", "domain_size")

    def __init__(self, table: Sequence[Label]):
        self.table = tuple(canonical_label(v) for v in table)
        self.domain_size = len(self.table)

    def __call__(self, x) -> Label:
        return self.table[self._check(x) - 1]

    def values(self) -> tuple[Label, ...]:
        return self.table

    def __eq__(self, other) -> bool:
        if isinstance(other, Hypothesis):
            return self.domain_size == other.domain_size and self.values() == other.values()
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.table)

    def __repr__(self) -> str:
        return f"TableHypothesis({[format_label(v) for v in self.table]})"


class SetHypothesis(Hypothesis):
    """``h_A``: outputs the set ``A`` on points of ``A`` and ``*`` elsewhere."""

    __slots__ = ("subset", "domain_size")

    def __init__(self, subset: Iterable[int], domain_size: int):
        self.subset = frozenset(int(v) for v in subset)
        self.domain_size = domain_size
        if any(not 1 <= v <= domain_size for v in self.subset):
            raise DomainMismatch("subset not contained in the domain")

    def __call__(self, x) -> Label:
        x = self._check(x)
        return self.subset if x in self.subset else STAR

    def __eq__(self, other) -> bool:
        if isinstance(other, SetHypothesis):
            return self.subset == other.subset and self.domain_size == other.domain_size
        if isinstance(other, Hypothesis):
            return self.domain_size == other.domain_size and self.values() == other.values()
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.values())

    def __repr__(self) -> str:
        return f"SetHypothesis({sorted(self.subset)}, n={self.domain_size})"


class FunctionHypothesis(Hypothesis):
    """Wrap a plain callable as a hypothesis over ``1..n``."""

    def __init__(self, fn: Callable[[int], Label], domain_size: int):
        self.fn = fn
        self.domain_size = domain_size

    def __call__(self, x) -> Label:
        return canonical_label(self.fn(self._check(x)))


@dataclass(frozen=True)
class TrainingSequence:
    examples: tuple[Example, ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self, "examples", tuple((x, canonical_label(y)) for x, y in self.examples)
        )

    def __len__(self) -> int:
        return len(self.examples)

    def __iter__(self):
        return iter(self.examples)

    def __getitem__(self, i):
        return self.examples[i]

    @property
    def points(self) -> tuple:
        return tuple(x for x, _ in self.examples)

    @property
    def labels(self) -> tuple:
        return tuple(y for _, y in self.examples)

    def take(self, indices: Iterable[int]) -> "TrainingSequence":
        """Sub-sequence at 1-based ``indices`` (repetition allowed)."""
        ex = self.examples
        return TrainingSequence(tuple(ex[i - 1] for i in indices))

    def with_ones(self) -> "TrainingSequence":
        """The lifted sequence ``((x, y), 1)`` of the graph reduction."""
        return TrainingSequence(tuple(((x, y), 1) for x, y in self.examples))

    def is_sub_sequence_of(self, other: "TrainingSequence") -> bool:
        pool = set(other.examples)
        return all(e in pool for e in self.examples)


@dataclass(frozen=True)
class LabeledDistribution:
    """Finite distribution over ``(point, label)`` pairs."""

    support: tuple[tuple[Example, float], ...]

    def __post_init__(self):
        entries = tuple(((x, canonical_label(y)), float(p)) for (x, y), p in self.support)
        seen = set()
        for pair, p in entries:
            if not 0.0 <= p <= 1.0:
                raise InvalidInput(f"mass {p} outside [0, 1]")
            if pair in seen:
                raise InvalidInput(f"duplicate support entry {pair!r}")
            seen.add(pair)
        total = math.fsum(p for _, p in entries)
        if abs(total - 1.0) > MASS_TOL:
            raise InvalidInput(f"masses sum to {total!r}, expected 1")
        object.__setattr__(self, "support", entries)

    @classmethod
    def from_target(
        cls,
        target: Hypothesis,
        points: Sequence[int] | None = None,
        weights: Sequence[float] | None = None,
    ) -> "LabeledDistribution":
        """``D_c``: draw ``x`` from the given marginal, label it with ``target``."""
        if points is None:
            points = range(1, target.domain_size + 1)
        points = list(points)
        if weights is None:
            masses = [1.0 / len(points)] * len(points)
        else:
            w = [float(v) for v in weights]
            total = math.fsum(w)
            masses = [v / total for v in w]
        return cls(tuple(((x, target(x)), p) for x, p in zip(points, masses)))

    @property
    def pairs(self) -> tuple[Example, ...]:
        return tuple(pair for pair, _ in self.support)

    @property
    def masses(self) -> np.ndarray:
        return np.array([p for _, p in self.support])

    def __len__(self) -> int:
        return len(self.support)

    def sample(self, m: int, rng: np.random.Generator) -> TrainingSequence:
        if m == 0:
            return TrainingSequence(())
        idx = rng.choice(len(self.support), size=m, p=self.masses)
        pairs = self.pairs
        return TrainingSequence(tuple(pairs[i] for i in idx))


@dataclass(frozen=True)
class RandomSource:
    """Seeded stream of randomness; ``(seed, stream)`` pins every draw.

    Streams come from ``numpy.random.SeedSequence`` spawn keys, so they are
    platform independent and statistically independent of each other.
    """

    seed: int
    stream: tuple[int, ...] = field(default=())

    def fork(self, *keys: int) -> "RandomSource":
        return RandomSource(self.seed, self.stream + tuple(int(k) for k in keys))

    def generator(self) -> np.random.Generator:
        seq = np.random.SeedSequence(entropy=self.seed & (2**64 - 1), spawn_key=self.stream)
        return np.random.Generator(np.random.PCG64(seq))


def loss_exact(h: Hypothesis, D: LabeledDistribution) -> float:
    return math.fsum(p for (x, y), p in D.support if h(x) != y)


def loss_exact_fraction(h: Hypothesis, D: LabeledDistribution) -> Fraction:
    """Same sum in exact rationals (masses read back as their float values)."""
    return sum((Fraction(p) for (x, y), p in D.support if h(x) != y), Fraction(0))


def is_consistent(h: Hypothesis, S: TrainingSequence | Iterable[Example]) -> bool:
    return all(h(x) == y for x, y in S)


def is_realizable(H, S: TrainingSequence | Iterable[Example]) -> bool:
    if not isinstance(S, TrainingSequence):
        S = TrainingSequence(tuple(S))
    return H.find_consistent(S) is not None
