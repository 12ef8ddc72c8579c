"""Path-flow equilibria on small subnetworks with affine edge costs.

Each edge costs ``fixed + slope * f`` where ``f`` is the total flow crossing
it. Two modes are offered:

``equal-cost``
    Solve "every path costs the same and flows add up to the demand" as one
    linear system. Flows may come out negative.
``nonnegative``
    Wardrop equilibrium: enumerate supports, solve equal-cost on each, and
    accept the first support whose flows are non-negative and whose unused
    paths are no cheaper than the used ones.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Optional, Sequence

from .errors import InputError, NoFeasibleSupportError, SolverError
from .exactmath import LinearSystem, solve_linear_system

Mode = Literal["equal-cost", "nonnegative"]

MAX_SUPPORT_PATHS = 16


@dataclass(frozen=True)
class AffineEdge:
    id: int
    fixed: Fraction
    slope: Fraction
    label: str = ""


@dataclass(frozen=True)
class FlowProblem:
    edges: tuple[AffineEdge, ...]
    paths: tuple[tuple[int, ...], ...]
    demand: Fraction
    name: str = ""
    comment: str = ""

    def __post_init__(self):
        errors = []
        ids = [e.id for e in self.edges]
        if len(set(ids)) != len(ids):
            errors.append("duplicate edge id")
        known = set(ids)
        for i, p in enumerate(self.paths):
            if not p:
                errors.append(f"paths[{i}] is empty")
            missing = [e for e in p if e not in known]
            if missing:
                errors.append(f"paths[{i}] references unknown edges {missing}")
            if len(set(p)) != len(p):
                errors.append(f"paths[{i}] repeats an edge")
        if len({frozenset(p) for p in self.paths}) != len(self.paths):
            errors.append("paths are not distinct")
        if self.demand < 0:
            errors.append("demand must be non-negative")
        if errors:
            raise InputError(errors)

    def edge(self, edge_id: int) -> AffineEdge:
        for e in self.edges:
            if e.id == edge_id:
                return e
        raise KeyError(edge_id)


@dataclass(frozen=True)
class PathCosts:
    """Path i costs ``constants[i] + sum_j coefficients[i][j] * x_j``."""

    constants: tuple[Fraction, ...]
    coefficients: tuple[tuple[Fraction, ...], ...]

    def evaluate(self, flows: Sequence[Fraction]) -> list[Fraction]:
        return [c + sum((a * x for a, x in zip(row, flows)), Fraction(0))
                for c, row in zip(self.constants, self.coefficients)]


@dataclass(frozen=True)
class EquilibriumResult:
    flows: tuple[Fraction, ...]
    common_cost: Fraction
    mode: Mode
    support: frozenset = frozenset()
    system: Optional[LinearSystem] = None  # the system that produced the flows
    system_paths: tuple[int, ...] = ()  # path index of each system variable


@dataclass
class VerificationReport:
    path_costs: list[Fraction]
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def path_cost_coefficients(problem: FlowProblem) -> PathCosts:
    slope = {e.id: e.slope for e in problem.edges}
    fixed = {e.id: e.fixed for e in problem.edges}
    sets = [set(p) for p in problem.paths]
    constants = tuple(sum((fixed[e] for e in p), Fraction(0)) for p in problem.paths)
    coefficients = tuple(
        tuple(sum((slope[e] for e in pi & pj), Fraction(0)) for pj in sets)
        for pi in sets
    )
    return PathCosts(constants, coefficients)


def equal_cost_system(costs: PathCosts, demand: Fraction) -> LinearSystem:
    """Stack ``cost_1 - cost_i = 0`` for i = 2..k, then ``sum x = demand``."""
    k = len(costs.constants)
    a, b = [], []
    first = costs.coefficients[0]
    for i in range(1, k):
        a.append([p - q for p, q in zip(first, costs.coefficients[i])])
        b.append(costs.constants[i] - costs.constants[0])
    a.append([Fraction(1)] * k)
    b.append(Fraction(demand))
    return LinearSystem.of(a, b)


def _restrict(costs: PathCosts, support: Sequence[int]) -> PathCosts:
    return PathCosts(
        tuple(costs.constants[i] for i in support),
        tuple(tuple(costs.coefficients[i][j] for j in support) for i in support),
    )


def _solve_equal_cost(costs: PathCosts, demand: Fraction) -> tuple[list[Fraction], LinearSystem]:
    system = equal_cost_system(costs, demand)
    return solve_linear_system(system), system


def solve_equilibrium(problem: FlowProblem, mode: Mode = "equal-cost") -> EquilibriumResult:
    if not problem.paths:
        raise InputError("flow problem has no paths")
    costs = path_cost_coefficients(problem)
    k = len(problem.paths)

    if mode == "equal-cost":
        flows, system = _solve_equal_cost(costs, problem.demand)
        common = costs.evaluate(flows)[0]
        support = frozenset(i for i, x in enumerate(flows) if x != 0)
        return EquilibriumResult(tuple(flows), common, mode, support, system, tuple(range(k)))

    if mode != "nonnegative":
        raise ValueError(f"unknown mode {mode!r}")
    if k > MAX_SUPPORT_PATHS:
        raise InputError(f"{k} paths exceed the support-enumeration limit of {MAX_SUPPORT_PATHS}")

    for size in range(1, k + 1):
        for support in itertools.combinations(range(k), size):
            try:
                sub, system = _solve_equal_cost(_restrict(costs, support), problem.demand)
            except SolverError:
                continue
            if any(x < 0 for x in sub):
                continue
            flows = [Fraction(0)] * k
            for i, x in zip(support, sub):
                flows[i] = x
            path_costs = costs.evaluate(flows)
            common = path_costs[support[0]]
            if all(path_costs[i] >= common for i in range(k) if i not in support):
                used = frozenset(i for i, x in enumerate(flows) if x > 0)
                return EquilibriumResult(tuple(flows), common, mode, used, system, support)

    raise NoFeasibleSupportError(
        "no support yields a non-negative equal-cost flow", equal_cost_system(costs, problem.demand)
    )


def verify_equilibrium(problem: FlowProblem, result: EquilibriumResult) -> VerificationReport:
    """Check a result by pushing its flows through the edges directly.

    Path costs are rebuilt from per-edge loads, not from the path-cost
    coefficient matrix the solver uses.
    """
    flows = list(result.flows)
    if len(flows) != len(problem.paths):
        return VerificationReport([], [f"{len(flows)} flows for {len(problem.paths)} paths"])

    load = {e.id: Fraction(0) for e in problem.edges}
    for p, x in zip(problem.paths, flows):
        for e in p:
            load[e] += x
    edge_cost = {e.id: e.fixed + e.slope * load[e.id] for e in problem.edges}
    path_costs = [sum((edge_cost[e] for e in p), Fraction(0)) for p in problem.paths]

    report = VerificationReport(path_costs)
    total = sum(flows, Fraction(0))
    if total != problem.demand:
        report.violations.append(f"flows sum to {total}, demand is {problem.demand}")

    if result.mode == "equal-cost":
        for i, c in enumerate(path_costs):
            if c != result.common_cost:
                report.violations.append(f"path {i + 1} costs {c}, common cost is {result.common_cost}")
    else:
        for i, (x, c) in enumerate(zip(flows, path_costs)):
            if x < 0:
                report.violations.append(f"path {i + 1} has negative flow {x}")
            elif x > 0 and c != result.common_cost:
                report.violations.append(f"used path {i + 1} costs {c}, common cost is {result.common_cost}")
            elif x == 0 and c < result.common_cost:
                report.violations.append(f"unused path {i + 1} costs {c} < common cost {result.common_cost}")
        if total > 0 and not any(x > 0 and c == result.common_cost for x, c in zip(flows, path_costs)):
            report.violations.append("no used path attains the common cost")
    return report
