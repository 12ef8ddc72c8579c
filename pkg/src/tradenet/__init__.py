"""Delivery-point placement on dual-cost trading networks.

Retailers choose delivery sites by the compromise (minimax-regret) rule over
an income matrix; flow-dependent subnetworks are solved for path-flow
equilibria in exact rational arithmetic.
"""

from .apsp import CostMatrix, DistanceTable, floyd_all_pairs, oracle_shortest, select_distances
from .compromise import CompromiseResult, compromise, compromise_oracle, compromise_select, ideal_vector, residual_matrix
from .documents import fixture_path, parse_flow_problem, parse_instance, parse_replay
from .equilibrium import (
    AffineEdge,
    EquilibriumResult,
    FlowProblem,
    path_cost_coefficients,
    solve_equilibrium,
    verify_equilibrium,
)
from .errors import (
    InconsistentSystemError,
    InputError,
    NoFeasibleSupportError,
    SingularSystemError,
    SolverError,
    UnpriceableSiteError,
)
from .exactmath import LinearSystem, parse_rational, render, render_mixed, solve_linear_system
from .market import IncomeMatrix, SitePrice, consumer_choice, enumerate_situations, income_matrix, site_price
from .model import Consumer, Edge, EdgeCost, Instance, Network, Producer, Situation, cost_view, validate_instance
from .pipeline import run_compromise

__version__ = "0.1.0"
