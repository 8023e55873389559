"""Finite hypothesis classes, restriction to samples and built-in generators.

Points and labels are interned: a hypothesis is a tuple of label *indices*, one
per domain point, and samples are tuples of point indices. Label and point
identifiers are only kept for display and serialization.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from math import comb
from typing import Hashable, Iterable, Sequence

import numpy as np

from .exceptions import CapExceededError, InvalidClassError, InvalidSampleError

Pattern = tuple  # label-index vector


@dataclass(frozen=True)
class HypothesisClass:
    """A finite class ``H`` of functions from ``points`` to ``labels``.

    ``hypotheses`` holds label-index rows, duplicate-free and sorted
    lexicographically. Build instances with :func:`make_class` or
    :meth:`from_dict`; the constructor validates but does not canonicalize.
    """

    points: tuple
    labels: tuple
    hypotheses: tuple

    def __post_init__(self):
        if not self.points:
            raise InvalidClassError("domain_points must be nonempty")
        if not self.labels:
            raise InvalidClassError("labels must be nonempty")
        if len(set(self.points)) != len(self.points):
            raise InvalidClassError("domain_points contain duplicates")
        if len(set(self.labels)) != len(self.labels):
            raise InvalidClassError("labels contain duplicates")
        if not self.hypotheses:
            raise InvalidClassError("empty table")
        k = len(self.labels)
        for row in self.hypotheses:
            if len(row) != len(self.points):
                raise InvalidClassError(
                    f"ragged row: expected length {len(self.points)}, got {len(row)}")
            for y in row:
                if not (0 <= y < k):
                    raise InvalidClassError(f"unknown label index {y}")
        if len(set(self.hypotheses)) != len(self.hypotheses):
            raise InvalidClassError("duplicate hypotheses")

    @property
    def num_points(self) -> int:
        return len(self.points)

    @property
    def num_labels(self) -> int:
        return len(self.labels)

    def __len__(self):
        return len(self.hypotheses)

    def point_index(self, point) -> int:
        try:
            return self.points.index(point)
        except ValueError:
            raise InvalidSampleError(f"unknown domain point {point!r}") from None

    def to_dict(self) -> dict:
        return {
            "points": list(self.points),
            "labels": list(self.labels),
            "hypotheses": [list(h) for h in self.hypotheses],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "HypothesisClass":
        """Inverse of :meth:`to_dict`; hypothesis entries are label indices."""
        try:
            points, labels, rows = data["points"], data["labels"], data["hypotheses"]
        except (KeyError, TypeError) as exc:
            raise InvalidClassError(f"malformed class document: {exc}") from None
        rows = [tuple(int(y) for y in r) for r in rows]
        return _canonical(tuple(points), tuple(labels), rows)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "HypothesisClass":
        return cls.from_dict(json.loads(text))


def _canonical(points, labels, rows) -> HypothesisClass:
    if not rows:
        raise InvalidClassError("empty table")
    width = len(points)
    for r in rows:
        if len(r) != width:
            raise InvalidClassError(f"ragged row: expected length {width}, got {len(r)}")
    return HypothesisClass(points, labels, tuple(sorted(set(rows))))


def make_class(domain_points: Sequence[Hashable], labels: Sequence[Hashable],
               hypothesis_table: Iterable[Sequence[Hashable]]) -> HypothesisClass:
    """Build a class from rows of label *identifiers*.

    Duplicate rows are dropped and the rest sorted lexicographically by label
    index.

    >>> H = make_class("abc", [0, 1], ["000", "100", "010"])  # doctest: +SKIP
    """
    labels = tuple(labels)
    lookup = {y: i for i, y in enumerate(labels)}
    rows = []
    for raw in hypothesis_table:
        row = []
        for y in raw:
            if y not in lookup:
                # allow "010"-style strings over integer alphabets
                try:
                    y = type(labels[0])(y)
                except (TypeError, ValueError, IndexError):
                    pass
            if y not in lookup:
                raise InvalidClassError(f"unknown label {y!r}")
            row.append(lookup[y])
        rows.append(tuple(row))
    return _canonical(tuple(domain_points), labels, rows)


def check_sample(hclass: HypothesisClass, S: Sequence[int]) -> tuple:
    """Validate a sample of point indices and return it as a tuple."""
    S = tuple(S)
    if len(S) < 1:
        raise InvalidSampleError("sample must contain at least one point")
    for x in S:
        if isinstance(x, bool) or not isinstance(x, (int, np.integer)):
            raise InvalidSampleError(f"sample entries must be point indices, got {x!r}")
        if not (0 <= x < hclass.num_points):
            raise InvalidSampleError(f"invalid point index {x}")
    return tuple(int(x) for x in S)


def restrict(hclass: HypothesisClass, S: Sequence[int]) -> tuple:
    """Return ``H|_S``: the sorted, duplicate-free set of patterns
    ``(h(x_1), ..., h(x_n))`` over ``h`` in the class."""
    S = check_sample(hclass, S)
    return tuple(sorted({tuple(h[x] for x in S) for h in hclass.hypotheses}))


def gen_full(num_points: int, num_labels: int) -> HypothesisClass:
    """All ``num_labels ** num_points`` functions."""
    rows = list(itertools.product(range(num_labels), repeat=num_points))
    return HypothesisClass(tuple(f"x{i}" for i in range(num_points)),
                           tuple(range(num_labels)), tuple(rows))


def gen_cantor(d: int, cap: int = 12870) -> HypothesisClass:
    """Slice ``X_d`` of the first Cantor class.

    One hypothesis ``h_A`` per half-size subset ``A`` of the ``d`` points, with
    ``h_A(x) = A`` for ``x`` in ``A`` and ``*`` otherwise. Only the realized
    subset labels are kept in the alphabet, plus ``"*"`` at index 0.
    """
    if isinstance(d, bool) or not isinstance(d, (int, np.integer)) or d < 2:
        raise InvalidClassError("d must be an even integer >= 2")
    if d % 2:
        raise InvalidClassError("d must be even")
    count = comb(d, d // 2)
    if count > cap:
        raise CapExceededError(f"C({d},{d // 2}) = {count} exceeds cap {cap}")
    points = tuple(f"x{i}" for i in range(d))
    subsets = list(itertools.combinations(range(d), d // 2))
    labels = ("*",) + tuple("{" + ",".join(points[i] for i in A) + "}" for A in subsets)
    rows = []
    for j, A in enumerate(subsets, start=1):
        members = set(A)
        rows.append(tuple(j if x in members else 0 for x in range(d)))
    return HypothesisClass(points, labels, tuple(sorted(rows)))


def gen_random(num_points: int, num_labels: int, num_hypotheses: int,
               seed=None) -> HypothesisClass:
    """``num_hypotheses`` distinct functions drawn uniformly without replacement."""
    if num_points < 1 or num_labels < 1:
        raise InvalidClassError("num_points and num_labels must be positive")
    total = num_labels ** num_points
    if not (1 <= num_hypotheses <= total):
        raise InvalidClassError(
            f"cannot draw {num_hypotheses} distinct hypotheses from {total} functions")
    rng = np.random.default_rng(seed)
    if total <= 2 ** 62:
        codes = rng.choice(total, size=num_hypotheses, replace=False)
    else:
        seen = set()
        while len(seen) < num_hypotheses:
            seen.add(int(rng.integers(0, num_labels, size=num_points)
                         @ (num_labels ** np.arange(num_points - 1, -1, -1, dtype=object))))
        codes = sorted(seen)
    rows = []
    for c in codes:
        c = int(c)
        digits = []
        for _ in range(num_points):
            c, r = divmod(c, num_labels)
            digits.append(r)
        rows.append(tuple(reversed(digits)))
    return HypothesisClass(tuple(f"x{i}" for i in range(num_points)),
                           tuple(range(num_labels)), tuple(sorted(rows)))


def load_class(path) -> HypothesisClass:
    with open(path) as fh:
        return HypothesisClass.from_dict(json.load(fh))


def save_class(hclass: HypothesisClass, path) -> None:
    with open(path, "w") as fh:
        json.dump(hclass.to_dict(), fh)
        fh.write("\n")
