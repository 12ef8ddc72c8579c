"""Network, instance and situation types plus validation."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Optional

from .errors import InputError

Role = Literal["retailer", "consumer"]
PayoffMode = Literal["revenue", "units"]

# A cost view is an n x n matrix: 0 on the diagonal, the edge weight for
# adjacent pairs, None for pairs without a direct edge.
CostView = tuple[tuple[Optional[int], ...], ...]


@dataclass(frozen=True)
class EdgeCost:
    transport_retailer: int
    corruption_retailer: int
    transport_consumer: int
    corruption_consumer: int

    @property
    def total_retailer(self) -> int:
        return self.transport_retailer + self.corruption_retailer

    @property
    def total_consumer(self) -> int:
        return self.transport_consumer + self.corruption_consumer

    def total(self, role: Role) -> int:
        if role == "retailer":
            return self.total_retailer
        if role == "consumer":
            return self.total_consumer
        raise ValueError(f"unknown role {role!r}")


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    cost: EdgeCost
    capacity: Optional[int] = None  # stored only; no computation reads it


@dataclass(frozen=True)
class Network:
    node_count: int
    edges: tuple[Edge, ...]


@dataclass(frozen=True)
class Producer:
    node: int
    unit_price: int


@dataclass(frozen=True)
class Consumer:
    node: int
    demand: int = 1


@dataclass(frozen=True)
class Instance:
    network: Network
    producers: tuple[Producer, ...]
    consumers: tuple[Consumer, ...]
    candidate_sites: tuple[int, ...]
    retailer_count: int
    markup_rate: Fraction
    payoff_mode: PayoffMode = "revenue"
    name: str = ""
    comment: str = ""


@dataclass(frozen=True)
class Situation:
    """One joint placement: ``assignment[j]`` is retailer j's site."""

    assignment: tuple[int, ...]

    def label(self) -> str:
        return "(" + ",".join(str(s) for s in self.assignment) + ")"


def _network_errors(network: Network) -> list[str]:
    errors = []
    n = network.node_count
    if isinstance(n, bool) or not isinstance(n, int) or n <= 0:
        return [f"node_count must be a positive integer, got {n!r}"]
    seen: dict[frozenset, int] = {}
    for i, e in enumerate(network.edges):
        where = f"edges[{i}] ({e.u},{e.v})"
        bad = [x for x in (e.u, e.v) if not isinstance(x, int) or not 0 <= x < n]
        if bad:
            errors.append(f"{where}: node out of range [0, {n})")
            continue
        if e.u == e.v:
            errors.append(f"{where}: self-loop")
        key = frozenset((e.u, e.v))
        if key in seen:
            errors.append(f"{where}: duplicate edge (first at edges[{seen[key]}])")
        else:
            seen[key] = i
        c = e.cost
        for name in ("transport_retailer", "corruption_retailer",
                     "transport_consumer", "corruption_consumer"):
            val = getattr(c, name)
            if isinstance(val, bool) or not isinstance(val, int) or val < 0:
                errors.append(f"{where}: {name} must be a non-negative integer, got {val!r}")
        if e.capacity is not None and (not isinstance(e.capacity, int) or e.capacity < 0):
            errors.append(f"{where}: capacity must be a non-negative integer")
    return errors


def validate_instance(instance: Instance) -> Instance:
    """Check every structural invariant; raise :class:`InputError` listing all violations.

    Returns the instance unchanged, so validating twice is harmless.
    """
    errors = _network_errors(instance.network)
    n = instance.network.node_count

    def in_range(x) -> bool:
        return isinstance(x, int) and not isinstance(x, bool) and 0 <= x < n

    for i, p in enumerate(instance.producers):
        if not in_range(p.node):
            errors.append(f"producers[{i}]: node out of range [0, {n})")
        if not isinstance(p.unit_price, int) or p.unit_price < 0:
            errors.append(f"producers[{i}]: unit_price must be a non-negative integer")
    if not instance.producers:
        errors.append("no producers")
    for i, c in enumerate(instance.consumers):
        if not in_range(c.node):
            errors.append(f"consumers[{i}]: node out of range [0, {n})")
        if not isinstance(c.demand, int) or c.demand <= 0:
            errors.append(f"consumers[{i}]: demand must be a positive integer")

    sites = instance.candidate_sites
    if not sites:
        errors.append("empty candidate site set")
    producer_nodes = {p.node for p in instance.producers}
    seen = set()
    for i, s in enumerate(sites):
        if not in_range(s):
            errors.append(f"candidate_sites[{i}]: node out of range [0, {n})")
        if s in seen:
            errors.append(f"candidate_sites[{i}]: duplicate site {s}")
        seen.add(s)
        if s in producer_nodes:
            errors.append(f"candidate_sites[{i}]: site {s} is colocated with a producer")

    k = instance.retailer_count
    if isinstance(k, bool) or not isinstance(k, int) or k <= 0:
        errors.append(f"retailer_count must be a positive integer, got {k!r}")
    elif sites and k > len(sites):
        errors.append(f"retailer_count {k} exceeds the {len(sites)} candidate sites")
    if not isinstance(instance.markup_rate, (int, Fraction)) or instance.markup_rate < 0:
        errors.append(f"markup must be a non-negative rational, got {instance.markup_rate!r}")
    if instance.payoff_mode not in ("revenue", "units"):
        errors.append(f"payoff_mode must be 'revenue' or 'units', got {instance.payoff_mode!r}")

    if errors:
        raise InputError(errors)
    return instance


def cost_view(network: Network, role: Role) -> CostView:
    """Symmetric one-hop weight matrix for the given role."""
    n = network.node_count
    w: list[list[Optional[int]]] = [[None] * n for _ in range(n)]
    for v in range(n):
        w[v][v] = 0
    for e in network.edges:
        c = e.cost.total(role)
        w[e.u][e.v] = c
        w[e.v][e.u] = c
    return tuple(tuple(row) for row in w)
