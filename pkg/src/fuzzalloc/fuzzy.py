"""Finite fuzzy subsets and reciprocal fuzzy preference relations."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from fuzzalloc.errors import (
    DegreeOutOfRange,
    DiagonalViolation,
    DuplicateLabel,
    EmptySubset,
    EntryOutOfRange,
    LabelMismatch,
    LengthMismatch,
    NonSquare,
    ReciprocityViolation,
)

#: Universe of investor risk classes, from most to least risk averse.
RISK_CLASSES = ("C", "B", "A", "A+")

RECIPROCITY_TOL = 1e-12


@dataclass(frozen=True)
class FuzzySubset:
    """Membership degrees over an ordered, finite universe of labels.

    Build instances with :func:`make_fuzzy_subset`, which validates.
    """

    labels: tuple[str, ...]
    degrees: tuple[float, ...]
    # set on complements so that complementing twice is exact despite rounding of 1 - (1 - d)
    _source: FuzzySubset | None = field(default=None, compare=False, repr=False)

    def __len__(self):
        return len(self.labels)

    def __getitem__(self, label: str) -> float:
        return self.degrees[self.labels.index(label)]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.degrees, dtype=float)

    @property
    def is_crisp(self) -> bool:
        return all(d in (0.0, 1.0) for d in self.degrees)


def make_fuzzy_subset(labels: Sequence[str], degrees: Sequence[float]) -> FuzzySubset:
    labels = tuple(str(lab) for lab in labels)
    degrees = tuple(float(d) for d in degrees)
    if len(labels) != len(degrees):
        raise LengthMismatch(f"{len(labels)} labels but {len(degrees)} degrees")
    seen = set()
    for lab in labels:
        if lab in seen:
            raise DuplicateLabel(f"label {lab!r} appears more than once")
        seen.add(lab)
    for lab, d in zip(labels, degrees):
        if not 0.0 <= d <= 1.0:
            raise DegreeOutOfRange(f"degree of {lab!r} is {d}, outside [0, 1]")
    return FuzzySubset(labels, degrees)


def height(f: FuzzySubset) -> float:
    if not f.degrees:
        raise EmptySubset("height of an empty fuzzy subset is undefined")
    return max(f.degrees)


def support(f: FuzzySubset) -> list[str]:
    return [lab for lab, d in zip(f.labels, f.degrees) if d > 0.0]


def is_normal(f: FuzzySubset) -> bool:
    return bool(f.degrees) and height(f) == 1.0


def complement(f: FuzzySubset) -> FuzzySubset:
    if f._source is not None:
        return f._source
    return FuzzySubset(f.labels, tuple(1.0 - d for d in f.degrees), f)


def is_sharpened_version(f_star: FuzzySubset, f: FuzzySubset) -> bool:
    """True when every degree of ``f_star`` is at least as far from 0.5 as in ``f``, on the same side."""
    if f_star.labels != f.labels:
        raise LabelMismatch(f"label lists differ: {f_star.labels} vs {f.labels}")
    for s, d in zip(f_star.degrees, f.degrees):
        if d >= 0.5 and s < d:
            return False
        if d <= 0.5 and s > d:
            return False
    return True


@dataclass(frozen=True)
class Violation:
    """One offending cell of a preference matrix (0-based indices)."""

    kind: str
    i: int
    j: int
    detail: str

    def __str__(self):
        return f"{self.kind} at ({self.i + 1},{self.j + 1}): {self.detail}"


@dataclass(frozen=True)
class PreferenceRelation:
    """Validated reciprocal fuzzy preference relation.

    ``mu[i, j]`` is the degree to which option ``i`` is preferred to ``j``.
    Transitivity is deliberately not checked.
    """

    mu: np.ndarray

    @property
    def size(self) -> int:
        return self.mu.shape[0]


def _as_square(mu) -> np.ndarray:
    try:
        arr = np.array(mu, dtype=float)
    except (TypeError, ValueError) as exc:
        raise NonSquare(f"preference matrix is not a rectangular numeric array: {exc}") from exc
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise NonSquare(f"preference matrix must be square and non-empty, got shape {arr.shape}")
    return arr


def preference_violations(mu) -> list[Violation]:
    """Every range, diagonal and reciprocity violation of ``mu``.

    Raises :class:`NonSquare` for arrays that are not square matrices at all.
    Reciprocity is reported once per unordered pair, at ``(i, j)`` with ``i < j``.
    """
    arr = _as_square(mu)
    n = arr.shape[0]
    out = []
    for i in range(n):
        for j in range(n):
            v = arr[i, j]
            if not 0.0 <= v <= 1.0:
                out.append(Violation("range", i, j, f"entry {v} outside [0, 1]"))
    for i in range(n):
        if abs(arr[i, i] - 0.5) > RECIPROCITY_TOL:
            out.append(Violation("diagonal", i, i, f"entry {arr[i, i]} != 0.5"))
    for i in range(n):
        for j in range(i + 1, n):
            total = arr[i, j] + arr[j, i]
            if abs(total - 1.0) > RECIPROCITY_TOL:
                out.append(Violation("reciprocity", i, j, f"{arr[i, j]} + {arr[j, i]} = {total:.12g} != 1"))
    return out


def validate_preference_relation(mu) -> PreferenceRelation:
    arr = _as_square(mu)
    violations = preference_violations(arr)
    if violations:
        by_kind = {"range": EntryOutOfRange, "diagonal": DiagonalViolation, "reciprocity": ReciprocityViolation}
        first = violations[0]
        raise by_kind[first.kind](str(first), violations)
    arr.setflags(write=False)
    return PreferenceRelation(arr)
