"""Delivery-site pricing, consumer choice and the retailer income matrix.

Distance sources are duck-typed: anything with a ``distance(u, v)`` method
(a :class:`~tradenet.apsp.CostMatrix` or a replayed
:class:`~tradenet.apsp.DistanceTable`) can be passed in.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Optional, Protocol, Sequence

from .errors import UnpriceableSiteError
from .model import Instance, PayoffMode, Situation

log = logging.getLogger(__name__)

ConsumerTiePolicy = Literal["price-then-site", "site"]


class Distances(Protocol):
    def distance(self, u: int, v: int) -> Optional[int]: ...


@dataclass(frozen=True)
class SitePrice:
    site: int
    producer: int  # index into instance.producers
    base_cost: int  # unit price at the producer plus delivery cost
    price: Fraction


@dataclass(frozen=True)
class IncomeMatrix:
    situations: tuple[Situation, ...]
    incomes: tuple[tuple[Fraction, ...], ...]
    site_prices: dict = field(default_factory=dict)  # site -> SitePrice
    unserved: tuple[tuple[int, ...], ...] = ()  # per situation, consumer indices buying nothing


def enumerate_situations(candidate_sites: Sequence[int], retailer_count: int) -> list[Situation]:
    """All placements on distinct sites, in combination order of the candidate list."""
    if retailer_count > len(candidate_sites):
        raise ValueError(f"retailer_count {retailer_count} exceeds {len(candidate_sites)} candidate sites")
    return [Situation(tuple(c)) for c in itertools.combinations(candidate_sites, retailer_count)]


def site_price(instance: Instance, site: int, retailer_distances: Distances) -> SitePrice:
    """Cheapest producer for ``site`` and the marked-up price there.

    Ties between producers go to the lowest producer index.
    """
    best: Optional[tuple[int, int]] = None
    for idx, p in enumerate(instance.producers):
        d = retailer_distances.distance(p.node, site)
        if d is None:
            continue
        base = p.unit_price + d
        if best is None or base < best[0]:
            best = (base, idx)
    if best is None:
        raise UnpriceableSiteError(f"site {site} is unreachable from every producer")
    base, idx = best
    return SitePrice(site, idx, base, (1 + Fraction(instance.markup_rate)) * base)


def consumer_choice(
    placed: Sequence[tuple[int, SitePrice]],
    consumer_node: int,
    consumer_distances: Distances,
    tie_policy: ConsumerTiePolicy = "price-then-site",
) -> Optional[int]:
    """Retailer whose site minimizes price plus the consumer's travel cost.

    ``placed`` pairs each retailer id with its site price. Returns None when
    no placed site is reachable from the consumer.
    """
    best_key = None
    best_retailer = None
    for retailer, sp in placed:
        d = consumer_distances.distance(consumer_node, sp.site)
        if d is None:
            continue
        total = sp.price + d
        if tie_policy == "price-then-site":
            key = (total, sp.price, sp.site)
        elif tie_policy == "site":
            key = (total, sp.site)
        else:
            raise ValueError(f"unknown tie policy {tie_policy!r}")
        if best_key is None or key < best_key:
            best_key, best_retailer = key, retailer
    return best_retailer


def income_matrix(
    instance: Instance,
    retailer_distances: Distances,
    consumer_distances: Distances,
    payoff: Optional[PayoffMode] = None,
    tie_policy: ConsumerTiePolicy = "price-then-site",
) -> IncomeMatrix:
    """Income of every retailer in every situation.

    Each consumer buys its whole demand at a single site. Under the default
    ``revenue`` payoff a retailer earns price x units sold; ``units`` counts
    units only.
    """
    payoff = payoff or instance.payoff_mode
    if payoff not in ("revenue", "units"):
        raise ValueError(f"unknown payoff mode {payoff!r}")
    situations = enumerate_situations(instance.candidate_sites, instance.retailer_count)
    prices = {s: site_price(instance, s, retailer_distances) for s in instance.candidate_sites}

    rows = []
    unserved = []
    for sit in situations:
        placed = [(j, prices[s]) for j, s in enumerate(sit.assignment)]
        income = [Fraction(0)] * instance.retailer_count
        missing = []
        for ci, c in enumerate(instance.consumers):
            j = consumer_choice(placed, c.node, consumer_distances, tie_policy)
            if j is None:
                missing.append(ci)
                continue
            income[j] += c.demand * (prices[sit.assignment[j]].price if payoff == "revenue" else 1)
        if missing:
            log.warning("situation %s: consumers %s reach no placed site", sit.label(), missing)
        rows.append(tuple(income))
        unserved.append(tuple(missing))
    return IncomeMatrix(tuple(situations), tuple(rows), prices, tuple(unserved))
