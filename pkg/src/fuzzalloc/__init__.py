"""Utility-maximizing fund allocation with fuzzy investor classification.

Public API re-exported from the submodules:

* :mod:`fuzzalloc.utility` - constrained optimum, bordered Hessian, investor class, risk aversion
* :mod:`fuzzalloc.capm` - expected return and risk on the Capital Market Line
* :mod:`fuzzalloc.fuzzy` - fuzzy subsets and reciprocal preference relations
* :mod:`fuzzalloc.fuzziness` - entropy and Minkowski-metric measures of fuzziness
* :mod:`fuzzalloc.control` - allocation trajectories from the optimal-control formulation
"""

from fuzzalloc.capm import MarketParams, cml_return, optimal_portfolio_risk, portfolio_expected_return
from fuzzalloc.control import (
    ControlProblem,
    Trajectory,
    TrajectorySample,
    analytic_trajectory,
    costate,
    hamiltonian,
    integrate_trajectory,
    performance_index,
)
from fuzzalloc.errors import FuzzAllocError
from fuzzalloc.fuzziness import (
    EntropyConfig,
    MetricOrder,
    fuzz_entropy,
    fuzz_metric,
    hamming_distance,
    max_entropy_distribution,
    minkowski_distance,
    shannon_entropy,
)
from fuzzalloc.fuzzy import (
    RISK_CLASSES,
    FuzzySubset,
    PreferenceRelation,
    complement,
    height,
    is_normal,
    is_sharpened_version,
    make_fuzzy_subset,
    support,
    validate_preference_relation,
)
from fuzzalloc.utility import (
    AllocationSolution,
    InvestorClass,
    QuadraticUtilityParams,
    UtilityFunction1D,
    absolute_risk_aversion,
    bordered_hessian,
    bordered_hessian_general,
    classify,
    marginal_rate_of_substitution,
    risk_premium,
    solve_allocation,
)

__version__ = "0.1.0"
