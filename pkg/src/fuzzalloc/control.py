"""Time path of the allocation under the quadratic performance index.

The performance index is ``J = integral of (a*x**2 - b*y**2) dt`` over
``[0, T]`` with ``x = 1 - y``. Stationarity of the Hamiltonian
``H = a*x**2 - b*y**2 + lam*y`` gives ``lam = 2*b*y`` and the costate
equation ``dlam/dt = -2*a*x``, hence ``dy/dt = -(a/b) * x`` and the closed
form ``x(t) = x0 * exp((a/b) * t)``.

The problem is treated as an initial-value problem from ``x0``; no terminal
condition is imposed and the state is not clipped at ``x = 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

from fuzzalloc.errors import InvalidControlProblem, NonUniformSpacing, StepTooLarge
from fuzzalloc.utility import QuadraticUtilityParams

DEFAULT_STEPS = 1000


@dataclass(frozen=True)
class ControlProblem:
    params: QuadraticUtilityParams
    x0: float
    horizon_T: float
    step: float | None = None

    def __post_init__(self):
        if self.params.b == 0:
            raise InvalidControlProblem("b must be non-zero: the costate relation lam = 2*b*y divides by b")
        if not (math.isfinite(self.horizon_T) and self.horizon_T > 0):
            raise InvalidControlProblem(f"horizon T must be a positive number, got {self.horizon_T}")
        if self.step is None:
            object.__setattr__(self, "step", self.horizon_T / DEFAULT_STEPS)
        if not self.step > 0:
            raise InvalidControlProblem(f"step must be > 0, got {self.step}")
        if self.step > self.horizon_T:
            raise StepTooLarge(f"step {self.step} exceeds the horizon T={self.horizon_T}")

    @property
    def growth_rate(self) -> float:
        """``a / b``, the exponential growth rate of the market fraction."""
        return self.params.a / self.params.b

    def times(self) -> np.ndarray:
        n = max(1, math.ceil(self.horizon_T / self.step - 1e-9))
        t = np.arange(n + 1, dtype=float) * self.step
        t[-1] = self.horizon_T
        return t


class TrajectorySample(NamedTuple):
    t: float
    x: float
    y: float


@dataclass(frozen=True)
class Trajectory:
    """Sampled allocation path; ``t``, ``x`` and ``y`` are equal-length arrays."""

    t: np.ndarray
    x: np.ndarray
    y: np.ndarray

    def __len__(self):
        return len(self.t)

    def __iter__(self) -> Iterator[TrajectorySample]:
        for t, x, y in zip(self.t, self.x, self.y):
            yield TrajectorySample(float(t), float(x), float(y))

    @property
    def samples(self) -> list[TrajectorySample]:
        return list(self)

    @property
    def boundary_crossings(self) -> list[float]:
        """Times at which ``x`` changes sign, i.e. the path leaves ``x >= 0``."""
        s = np.sign(self.x)
        idx = np.nonzero(s[1:] * s[:-1] < 0)[0]
        return [float(self.t[i + 1]) for i in idx]


def _frozen(*arrays):
    for a in arrays:
        a.setflags(write=False)
    return arrays


def hamiltonian(params: QuadraticUtilityParams, x: float, y: float, lam: float) -> float:
    return params.a * x * x - params.b * y * y + lam * y


def analytic_trajectory(problem: ControlProblem) -> Trajectory:
    t = problem.times()
    x = problem.x0 * np.exp(problem.growth_rate * t)
    y = 1.0 - x
    return Trajectory(*_frozen(t, x, y))


def integrate_trajectory(problem: ControlProblem) -> Trajectory:
    """Classical RK4 on ``dy/dt = -(a/b) * (1 - y)`` from ``y(0) = 1 - x0``."""
    r = problem.growth_rate
    if abs(r) * problem.step > 1.0:
        raise StepTooLarge(f"|a/b| * step = {abs(r) * problem.step:.6g} exceeds 1; reduce the step")

    def rhs(y):
        return -r * (1.0 - y)

    t = problem.times()
    y = np.empty_like(t)
    y[0] = 1.0 - problem.x0
    for k in range(len(t) - 1):
        h = t[k + 1] - t[k]
        yk = y[k]
        k1 = rhs(yk)
        k2 = rhs(yk + 0.5 * h * k1)
        k3 = rhs(yk + 0.5 * h * k2)
        k4 = rhs(yk + h * k3)
        y[k + 1] = yk + h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0
    x = 1.0 - y
    x[0] = problem.x0
    return Trajectory(*_frozen(t, x, y))


def costate(params: QuadraticUtilityParams, trajectory: Trajectory) -> np.ndarray:
    """Multiplier path ``lam(t) = 2*b*y(t)``."""
    return 2.0 * params.b * trajectory.y


def performance_index(params: QuadraticUtilityParams, trajectory: Trajectory) -> float:
    """Composite-trapezoid value of ``J`` over a uniformly spaced trajectory."""
    if len(trajectory) == 0:
        raise ValueError("empty trajectory")
    if len(trajectory) == 1:
        return 0.0
    dt = np.diff(trajectory.t)
    h = dt[0]
    if h <= 0 or np.max(np.abs(dt - h)) > 1e-6 * h:
        raise NonUniformSpacing("performance index needs uniformly spaced samples")
    f = params.a * trajectory.x**2 - params.b * trajectory.y**2
    return float(h * (f.sum() - 0.5 * (f[0] + f[-1])))
