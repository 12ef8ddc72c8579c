"""End-to-end compromise placement: distances -> prices -> incomes -> selection."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional

from .apsp import CostMatrix, DistanceTable, floyd_all_pairs, select_distances
from .compromise import CompromiseResult, TiePolicy, compromise
from .documents import Replay
from .market import ConsumerTiePolicy, IncomeMatrix, income_matrix
from .model import Instance, PayoffMode, Role, cost_view

Metric = Role


@dataclass(frozen=True)
class DistanceDiff:
    table: Literal["producer-site", "consumer-site"]
    row: int
    col: int
    replayed: Optional[int]
    recomputed: Optional[int]


@dataclass(frozen=True)
class CompromiseRun:
    instance: Instance
    producer_sites: DistanceTable  # plain distances actually used
    consumer_sites: DistanceTable
    incomes: IncomeMatrix
    result: CompromiseResult
    replay: Optional[Replay] = None
    diffs: tuple[DistanceDiff, ...] = ()

    @property
    def selected_sites(self) -> tuple[int, ...]:
        return self.incomes.situations[self.result.selected].assignment


def all_pairs(instance: Instance, metric: Metric) -> CostMatrix:
    return floyd_all_pairs(cost_view(instance.network, metric))


def site_distances(instance: Instance, metric: Metric, matrix: Optional[CostMatrix] = None) -> DistanceTable:
    """Producers x sites (retailer metric) or consumers x sites (consumer metric)."""
    matrix = matrix or all_pairs(instance, metric)
    if metric == "retailer":
        rows = [p.node for p in instance.producers]
    else:
        rows = [c.node for c in instance.consumers]
    return select_distances(matrix, rows, instance.candidate_sites)


def diff_tables(kind, replayed: DistanceTable, recomputed: DistanceTable) -> list[DistanceDiff]:
    out = []
    for r, rrow, crow in zip(replayed.rows, replayed.values, recomputed.values):
        for c, a, b in zip(replayed.cols, rrow, crow):
            if a != b:
                out.append(DistanceDiff(kind, r, c, a, b))
    return out


def run_compromise(
    instance: Instance,
    replay: Optional[Replay] = None,
    payoff: Optional[PayoffMode] = None,
    tie_policy: TiePolicy = "first",
    consumer_tie_policy: ConsumerTiePolicy = "price-then-site",
) -> CompromiseRun:
    """Solve the placement game; replayed tables, when given, replace recomputed ones."""
    producer_sites = site_distances(instance, "retailer")
    consumer_sites = site_distances(instance, "consumer")
    diffs: list[DistanceDiff] = []
    if replay is not None:
        if replay.producer_sites is not None:
            diffs += diff_tables("producer-site", replay.producer_sites, producer_sites)
            producer_sites = replay.producer_sites
        if replay.consumer_sites is not None:
            diffs += diff_tables("consumer-site", replay.consumer_sites, consumer_sites)
            consumer_sites = replay.consumer_sites

    incomes = income_matrix(instance, producer_sites, consumer_sites, payoff, consumer_tie_policy)
    keys = [s.assignment for s in incomes.situations]
    result = compromise(incomes.incomes, tie_policy, keys)
    return CompromiseRun(instance, producer_sites, consumer_sites, incomes, result, replay, tuple(diffs))
