"""Entropy and metric measures of fuzziness.

A measure of fuzziness is zero on crisp sets, maximal when every degree is 0.5
and does not increase when a subset is sharpened. Two families are provided:
the entropy measure (a sum of binary Shannon entropies of the degrees) and the
normalized Minkowski distance between a subset and its complement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from fuzzalloc.errors import EmptySubset, InvalidConfig, NotAProbabilityVector
from fuzzalloc.fuzzy import FuzzySubset

PROBABILITY_SUM_TOL = 1e-9

Degrees = Union[FuzzySubset, Sequence[float], np.ndarray]


@dataclass(frozen=True)
class EntropyConfig:
    """Scale constant ``k`` and logarithm base of an entropy."""

    scale_k: float = 1.0
    log_base: float = 2.0

    def __post_init__(self):
        if not self.scale_k > 0:
            raise InvalidConfig(f"scale_k must be > 0, got {self.scale_k}")
        if not self.log_base > 1:
            raise InvalidConfig(f"log_base must be > 1, got {self.log_base}")

    @classmethod
    def normalized(cls, n: int, log_base: float = 2.0) -> "EntropyConfig":
        """``k = 1/n``, base 2: the entropy of fuzziness then lies in [0, 1]."""
        if n < 1:
            raise EmptySubset("normalized entropy needs at least one element")
        return cls(1.0 / n, log_base)


@dataclass(frozen=True)
class MetricOrder:
    rho: int = 2

    def __post_init__(self):
        if isinstance(self.rho, bool) or int(self.rho) != self.rho or self.rho < 1:
            raise InvalidConfig(f"Minkowski order must be an integer >= 1, got {self.rho!r}")


def _order(order: MetricOrder | int) -> int:
    if isinstance(order, MetricOrder):
        return int(order.rho)
    return int(MetricOrder(order).rho)


def _degrees(f: Degrees) -> np.ndarray:
    arr = f.as_array() if isinstance(f, FuzzySubset) else np.asarray(f, dtype=float)
    if arr.size == 0:
        raise EmptySubset("fuzziness of an empty subset is undefined")
    return arr


def _xlogx(p: np.ndarray, base: float) -> np.ndarray:
    safe = np.where(p > 0.0, p, 1.0)
    return np.where(p > 0.0, p * np.log(safe), 0.0) / math.log(base)


def shannon_entropy(p: Sequence[float] | np.ndarray, config: EntropyConfig | None = None) -> float:
    """``-k * sum(p_i log p_i)`` with ``0 log 0 = 0``; default ``k = 1``, base 2.

    Vectors whose sum is within 1e-9 of one are renormalized; anything else is
    rejected.
    """
    config = config or EntropyConfig()
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or p.size == 0:
        raise NotAProbabilityVector("expected a non-empty 1-D vector")
    if not np.all(np.isfinite(p)) or np.any(p < 0.0):
        raise NotAProbabilityVector("probabilities must be finite and non-negative")
    total = p.sum()
    if abs(total - 1.0) > PROBABILITY_SUM_TOL:
        raise NotAProbabilityVector(f"probabilities sum to {total!r}, not 1")
    p = p / total
    return float(-config.scale_k * _xlogx(p, config.log_base).sum())


def max_entropy_distribution(n: int) -> np.ndarray:
    """The uniform vector of length ``n``, where Shannon entropy peaks."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return np.full(n, 1.0 / n)


def fuzz_entropy(f: Degrees, config: EntropyConfig | None = None) -> float:
    """Entropy measure of fuzziness.

    Sums the binary entropy ``-(d log d + (1-d) log(1-d))`` of every degree
    and scales by ``k``. With the default ``k = 1/n`` and base 2 the result is
    in [0, 1], equal to 1 exactly when all degrees are 0.5.
    """
    d = _degrees(f)
    config = config or EntropyConfig.normalized(d.size)
    terms = _xlogx(d, config.log_base) + _xlogx(1.0 - d, config.log_base)
    return float(-config.scale_k * terms.sum())


def minkowski_distance(f: Degrees, order: MetricOrder | int = 2) -> float:
    """Minkowski distance ``(sum |2 d_i - 1|**rho)**(1/rho)`` between ``f`` and its complement."""
    rho = _order(order)
    d = np.abs(2.0 * _degrees(f) - 1.0)
    if rho == 1:
        return float(d.sum())
    return float((d**rho).sum() ** (1.0 / rho))


def hamming_distance(f: Degrees) -> float:
    return minkowski_distance(f, 1)


def euclidean_distance(f: Degrees) -> float:
    return minkowski_distance(f, 2)


def fuzz_metric(f: Degrees, order: MetricOrder | int = 2) -> float:
    """Metric measure of fuzziness ``1 - D_rho(F, F^c) / n**(1/rho)``.

    ``n**(1/rho)`` is the complement distance of a crisp subset of ``n``
    elements, so the measure lies in [0, 1].
    """
    rho = _order(order)
    n = _degrees(f).size
    crisp = float(n) if rho == 1 else float(n) ** (1.0 / rho)
    return 1.0 - minkowski_distance(f, rho) / crisp


def fuzz_metric_rmsd(f: Degrees) -> float:
    """Two-element Euclidean fuzziness written as ``1 - sqrt(2) * RMSD``.

    ``RMSD`` here is the Euclidean complement distance halved. For two-element
    subsets this agrees with ``fuzz_metric(f, 2)`` and serves as an
    independent algebraic route to it.
    """
    rmsd = euclidean_distance(f) / 2.0
    return 1.0 - math.sqrt(2.0) * rmsd


def fuzz_hamming(f: Degrees) -> float:
    """``1 - sum|2 d_i - 1| / n``; the absolute value sits inside the sum."""
    d = _degrees(f)
    return 1.0 - float(np.abs(2.0 * d - 1.0).sum()) / d.size
