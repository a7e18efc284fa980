"""Payment network creation game: exact costs, equilibria and parameter maps."""

from .closed_form import (
    Kind, NEVerdict, OptimumKind, OptimumReport, TopologySpec, Verdict,
    biclique_alpha, biclique_beta, biclique_corner, entringer_bounds, ne_predicate,
    social_optimum,
)
from .core import (
    INF, CostBreakdown, GameParams, GraphStatistics, PaymentNetwork, ProfileError,
    StrategyProfile, betweenness_cost, build_network, closeness_cost, freeman_betweenness,
    graph_statistics, player_cost, social_cost,
)
from .dynamics import Outcome, Schedule, Trajectory, run, step
from .equilibrium import (
    DeviationWitness, EquilibriumReport, ResourceLimitError, best_response, enumerate_nash,
    is_nash, price_of_anarchy, price_of_stability,
)
from .sweep import DeviationCoefficients, ParameterMap, deviation_coefficients, ne_region, sweep_grid

__version__ = "0.1.0"
