"""Constrained utility maximization for a two-asset allocation.

An investor splits funds between the market portfolio (fraction ``x``) and a
risk-free asset (fraction ``y``) subject to ``x + y = 1``. With the quadratic
utility ``U(x, y) = a*x**2 - b*y**2`` the Lagrangian stationary point has a
closed form; this module solves it, checks the second-order condition, maps the
optimum to an investor class and provides the one-dimensional risk-aversion
quantities (absolute risk aversion, risk premium).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

from fuzzalloc.errors import (
    DegenerateCoefficients,
    DivisionByZeroSlope,
    NegativeVariance,
    NonFiniteDerivative,
    ZeroMarginalUtility,
)

UtilityFunction2D = Callable[[float, float], float]

DEGENERACY_TOL = 1e-12
LAMBDA_CONSISTENCY_TOL = 1e-9
DEFAULT_CLASS_TOL = 1e-9


@dataclass(frozen=True)
class QuadraticUtilityParams:
    """Coefficients of ``U(x, y) = a*x**2 - b*y**2``.

    No invariant is enforced here: ``a == b`` is a legal value for
    :func:`bordered_hessian` and only :func:`solve_allocation` rejects it.
    """

    a: float
    b: float

    def __call__(self, x: float, y: float) -> float:
        return self.a * x * x - self.b * y * y

    @property
    def is_degenerate(self) -> bool:
        return abs(self.a - self.b) <= DEGENERACY_TOL


@dataclass(frozen=True)
class AllocationSolution:
    """Stationary point of the budget-constrained quadratic utility.

    Attributes:
        x_star: fraction of funds in the market portfolio.
        y_star: fraction in the risk-free asset; negative means borrowing.
        lambda_star: Lagrange multiplier, the marginal utility of money.
        u_star: utility at the stationary point.
        is_maximum: bordered Hessian is strictly positive.
        is_feasible: ``x_star >= 0``.
        lambda_discrepancy: ``|2a*x* - (-2b*y*)|``, an internal consistency
            diagnostic between the two first-order equations.
    """

    x_star: float
    y_star: float
    lambda_star: float
    u_star: float
    is_maximum: bool = True
    is_feasible: bool = True
    lambda_discrepancy: float = 0.0

    @property
    def flags(self) -> tuple[str, ...]:
        out = []
        if not self.is_maximum:
            out.append("not-a-maximum: bordered Hessian 2(b - a) <= 0")
        if not self.is_feasible:
            out.append("infeasible: x* < 0 violates non-negativity")
        if self.lambda_discrepancy > LAMBDA_CONSISTENCY_TOL:
            out.append(f"lambda-inconsistent: first-order equations disagree by {self.lambda_discrepancy:.3g}")
        return tuple(out)


class InvestorClass(enum.Enum):
    OVERTLY_AGGRESSIVE = "A+"
    AGGRESSIVE = "A"
    NEUTRAL = "B"
    CONSERVATIVE = "C"

    @property
    def label(self) -> str:
        return self.value

    @property
    def description(self) -> str:
        return _CLASS_DESCRIPTIONS[self]

    def __str__(self) -> str:
        return self.value


_CLASS_DESCRIPTIONS = {
    InvestorClass.OVERTLY_AGGRESSIVE: "overtly aggressive (leveraged, no risk aversion)",
    InvestorClass.AGGRESSIVE: "aggressive (weak risk aversion)",
    InvestorClass.NEUTRAL: "neutral (balanced risk aversion)",
    InvestorClass.CONSERVATIVE: "conservative (strong risk aversion)",
}


def solve_allocation(params: QuadraticUtilityParams) -> AllocationSolution:
    """Closed-form optimum of ``a*x**2 - b*y**2`` subject to ``x + y = 1``.

    Non-maximal (``b <= a``) and infeasible (``x* < 0``) stationary points are
    still returned, with ``is_maximum`` / ``is_feasible`` cleared, so callers
    can report why a configuration is unusual instead of losing it.

    >>> s = solve_allocation(QuadraticUtilityParams(a=-2.0, b=3.0))
    >>> round(s.x_star, 12), round(s.y_star, 12)
    (0.6, 0.4)
    """
    a, b = float(params.a), float(params.b)
    if params.is_degenerate:
        raise DegenerateCoefficients(f"a and b must differ (a={a!r}, b={b!r}); the optimum is undefined")
    d = a - b
    x = -b / d
    y = a / d
    # keep the budget identity exact rather than trusting two roundings
    if abs(x) >= abs(y):
        y = 1.0 - x
    else:
        x = 1.0 - y
    lam = 2.0 * a * x
    lam_alt = -2.0 * b * y
    return AllocationSolution(
        x_star=x,
        y_star=y,
        lambda_star=lam,
        u_star=-a * b / d,
        is_maximum=bordered_hessian(params) > 0.0,
        is_feasible=x >= 0.0,
        lambda_discrepancy=abs(lam - lam_alt),
    )


def bordered_hessian(params: QuadraticUtilityParams) -> float:
    """Bordered Hessian ``2(b - a)`` of the quadratic problem; positive means maximum."""
    return 2.0 * (params.b - params.a)


def _step(*coords: float) -> float:
    return 1e-5 * max(1.0, *(abs(c) for c in coords))


def _finite(value: float, what: str) -> float:
    if not math.isfinite(value):
        raise NonFiniteDerivative(f"{what} evaluated to a non-finite value")
    return value


def _second_difference(g: Callable[[float], float], h: float) -> float:
    """Richardson-extrapolated central second difference of ``g`` at 0.

    A plain three-point stencil at the 1e-5 first-derivative step loses about
    six digits to cancellation, so the stencil uses a larger base step and
    cancels the O(h**2) term instead.
    """

    def d2(s):
        return (g(s) - 2.0 * g(0.0) + g(-s)) / (s * s)

    return (4.0 * d2(h / 2.0) - d2(h)) / 3.0


def _partials(f: UtilityFunction2D, x: float, y: float) -> tuple[float, float]:
    h = _step(x, y)
    fx = (f(x + h, y) - f(x - h, y)) / (2.0 * h)
    fy = (f(x, y + h) - f(x, y - h)) / (2.0 * h)
    return _finite(fx, "f_x"), _finite(fy, "f_y")


def bordered_hessian_general(f: UtilityFunction2D, x: float, y: float) -> float:
    """Bordered Hessian ``2 f_xy - f_xx - f_yy`` of any smooth ``f`` at ``(x, y)``.

    Derivatives come from central finite differences, so ``f`` needs to be
    defined in a small neighbourhood of the point.
    """
    H = 100.0 * _step(x, y)
    fxx = _second_difference(lambda s: f(x + s, y), H)
    fyy = _second_difference(lambda s: f(x, y + s), H)

    def mixed(s):
        return (f(x + s, y + s) - f(x + s, y - s) - f(x - s, y + s) + f(x - s, y - s)) / (4.0 * s * s)

    fxy = (4.0 * mixed(H / 2.0) - mixed(H)) / 3.0
    for value, name in ((fxx, "f_xx"), (fyy, "f_yy"), (fxy, "f_xy")):
        _finite(value, name)
    return 2.0 * fxy - fxx - fyy


def marginal_rate_of_substitution(f: UtilityFunction2D, x: float, y: float) -> float:
    """Slope ``dy/dx = -f_x / f_y`` of the indifference curve through ``(x, y)``."""
    fx, fy = _partials(f, x, y)
    if abs(fy) < 1e-12:
        raise DivisionByZeroSlope(f"f_y vanishes at ({x}, {y}); the indifference curve is vertical")
    return -fx / fy


def classify(solution: AllocationSolution, tol: float = DEFAULT_CLASS_TOL) -> InvestorClass:
    """Map an optimum to one of the classes A+, A, B, C.

    The tie ``y* == x*`` (class B) is tested first, with tolerance
    ``tol * max(1, |x*|, |y*|)``, so rounding noise never pushes a neutral
    investor into A or C.
    """
    x, y = solution.x_star, solution.y_star
    if abs(y - x) <= tol * max(1.0, abs(x), abs(y)):
        return InvestorClass.NEUTRAL
    if y < x:
        return InvestorClass.OVERTLY_AGGRESSIVE if y <= 0.0 else InvestorClass.AGGRESSIVE
    return InvestorClass.CONSERVATIVE


class UtilityFamily(enum.Enum):
    LOGARITHMIC = "logarithmic"
    EXPONENTIAL = "exponential"
    CUSTOM = "custom"


@dataclass(frozen=True)
class UtilityFunction1D:
    """A utility-of-wealth function ``u(w)`` tagged with its family.

    Use the :meth:`logarithmic`, :meth:`exponential` and :meth:`custom`
    constructors. Tagged families carry closed-form risk aversion; custom
    functions are differentiated numerically.
    """

    func: Callable[[float], float]
    family: UtilityFamily = UtilityFamily.CUSTOM
    c: float | None = None

    def __call__(self, w: float) -> float:
        return self.func(w)

    @classmethod
    def logarithmic(cls) -> "UtilityFunction1D":
        return cls(math.log, UtilityFamily.LOGARITHMIC)

    @classmethod
    def exponential(cls, c: float) -> "UtilityFunction1D":
        """CARA utility ``u(w) = -exp(-c*w)``."""
        return cls(lambda w: -math.exp(-c * w), UtilityFamily.EXPONENTIAL, float(c))

    @classmethod
    def custom(cls, func: Callable[[float], float]) -> "UtilityFunction1D":
        return cls(func, UtilityFamily.CUSTOM)


def absolute_risk_aversion(u: UtilityFunction1D, w: float) -> float:
    """Arrow-Pratt absolute risk aversion ``-u''(w) / u'(w)``."""
    if u.family is UtilityFamily.LOGARITHMIC:
        if w <= 0:
            raise ValueError(f"logarithmic utility needs w > 0, got {w}")
        return 1.0 / w
    if u.family is UtilityFamily.EXPONENTIAL:
        return u.c

    h = _step(w)
    try:
        hi, lo = _finite(u(w + h), "u"), _finite(u(w - h), "u")
        d2u = _finite(_second_difference(lambda s: u(w + s), 100.0 * h), "u''")
    except NonFiniteDerivative:
        raise
    except (ValueError, OverflowError) as exc:
        raise NonFiniteDerivative(f"u could not be probed around w={w}: {exc}") from exc
    # u' is zero when the rise over the stencil is lost in the rounding of u itself;
    # an absolute cut-off would depend on the arbitrary scale of u
    if abs(hi - lo) <= 1e-12 * max(abs(hi), abs(lo)) or hi == lo:
        raise ZeroMarginalUtility(f"u'({w}) is zero; absolute risk aversion is undefined")
    return -d2u / ((hi - lo) / (2.0 * h))


def risk_premium(u: UtilityFunction1D, w: float, variance: float) -> float:
    """Approximate premium ``(variance / 2) * ARA(w)`` paid to avoid a fair gamble."""
    if variance < 0:
        raise NegativeVariance(f"variance must be >= 0, got {variance}")
    return 0.5 * variance * absolute_risk_aversion(u, w)
