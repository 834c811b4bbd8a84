"""Capital Market Line mapping of an optimal allocation.

Rates are plain per-period decimals (``0.10`` means 10%).
"""

from __future__ import annotations

from dataclasses import dataclass

from fuzzalloc.errors import DegenerateCoefficients, InvalidMarketParams, NegativeStdev
from fuzzalloc.utility import AllocationSolution, QuadraticUtilityParams


@dataclass(frozen=True)
class MarketParams:
    expected_market_return: float
    risk_free_rate: float
    market_stdev: float

    def __post_init__(self):
        if not self.market_stdev > 0:
            raise InvalidMarketParams(f"market_stdev must be > 0, got {self.market_stdev}")
        if not self.expected_market_return > self.risk_free_rate:
            raise InvalidMarketParams(
                "expected market return must exceed the risk-free rate "
                f"({self.expected_market_return} <= {self.risk_free_rate})"
            )

    @property
    def cml_slope(self) -> float:
        """Market price of risk ``(E(R_m) - R_f) / S_m``."""
        return (self.expected_market_return - self.risk_free_rate) / self.market_stdev


def portfolio_expected_return(allocation: AllocationSolution, market: MarketParams) -> float:
    return allocation.x_star * market.expected_market_return + allocation.y_star * market.risk_free_rate


def optimal_portfolio_risk(params: QuadraticUtilityParams, market: MarketParams) -> float:
    """Standard deviation ``S_m * x*`` of the investor's efficient portfolio.

    ``b == 0`` is admitted and gives zero risk: nothing is held in the market.
    """
    if params.is_degenerate:
        raise DegenerateCoefficients(f"a and b must differ (a={params.a!r}, b={params.b!r})")
    return market.market_stdev * (-params.b / (params.a - params.b))


def cml_return(portfolio_stdev: float, market: MarketParams) -> float:
    """Expected return of the efficient portfolio with the given risk."""
    if portfolio_stdev < 0:
        raise NegativeStdev(f"portfolio standard deviation must be >= 0, got {portfolio_stdev}")
    premium = market.expected_market_return - market.risk_free_rate
    return market.risk_free_rate + premium * (portfolio_stdev / market.market_stdev)
