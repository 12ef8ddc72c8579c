"""JSON file formats: instances, replay tables and flow problems.

Each format has a ``parse_*`` function (text -> validated object) and a
``*_to_document`` function (object -> plain dict) such that rendering and
re-parsing is the identity.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Literal, Optional

import jsonschema

from .apsp import DistanceTable
from .equilibrium import AffineEdge, FlowProblem
from .errors import InputError
from .exactmath import parse_rational, render
from .model import Consumer, Edge, EdgeCost, Instance, Network, Producer, validate_instance

Convention = Literal["l-plus-d", "d"]

_RATIONAL = {"oneOf": [{"type": "integer"}, {"type": "string"}]}
_NONNEG_INT = {"type": "integer", "minimum": 0}

INSTANCE_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["node_count", "edges", "producers", "consumers", "candidate_sites",
                 "retailer_count", "markup"],
    "properties": {
        "name": {"type": "string"},
        "comment": {"type": "string"},
        "node_count": {"type": "integer", "minimum": 1},
        "edges": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["u", "v", "ca_transport", "ca_corruption", "cb_transport", "cb_corruption"],
                "properties": {
                    "u": {"type": "integer"},
                    "v": {"type": "integer"},
                    "ca_transport": _NONNEG_INT,
                    "ca_corruption": _NONNEG_INT,
                    "cb_transport": _NONNEG_INT,
                    "cb_corruption": _NONNEG_INT,
                    "capacity": _NONNEG_INT,
                },
            },
        },
        "producers": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["node", "unit_price"],
                "properties": {"node": {"type": "integer"}, "unit_price": _NONNEG_INT},
            },
        },
        "consumers": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["node"],
                "properties": {"node": {"type": "integer"}, "demand": {"type": "integer", "minimum": 1}},
            },
        },
        "candidate_sites": {"type": "array", "items": {"type": "integer"}},
        "retailer_count": {"type": "integer", "minimum": 1},
        "markup": _RATIONAL,
        "payoff_mode": {"enum": ["revenue", "units"]},
    },
}

_TABLE = {
    "type": "object",
    "additionalProperties": False,
    "required": ["values"],
    "properties": {
        "convention": {"enum": ["l-plus-d", "d"]},
        "rows": {"type": "array", "items": {"type": "integer"}},
        "cols": {"type": "array", "items": {"type": "integer"}},
        "values": {"type": "array", "items": {"type": "array", "items": {"type": ["integer", "null"], "minimum": 0}}},
    },
}

REPLAY_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "comment": {"type": "string"},
        "producer_site_matrix": _TABLE,
        "consumer_site_matrix": _TABLE,
    },
}

FLOW_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["edges", "paths", "demand"],
    "properties": {
        "name": {"type": "string"},
        "comment": {"type": "string"},
        "edges": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["id", "fixed", "slope"],
                "properties": {
                    "id": {"type": "integer"},
                    "fixed": _RATIONAL,
                    "slope": _RATIONAL,
                    "label": {"type": "string"},
                },
            },
        },
        "paths": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
        "demand": _RATIONAL,
    },
}


@dataclass(frozen=True)
class Replay:
    """Distance tables given as input instead of recomputed.

    ``producer_sites`` always holds plain distances; ``producer_convention``
    remembers how the file displayed them so the document can be rebuilt.
    """

    producer_sites: Optional[DistanceTable] = None
    producer_convention: Convention = "d"
    consumer_sites: Optional[DistanceTable] = None
    comment: str = ""


def _load(text: str, what: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what}: syntax error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _check_schema(doc: Any, schema: dict, what: str) -> None:
    validator = jsonschema.Draft202012Validator(schema)
    problems = sorted(validator.iter_errors(doc), key=lambda e: list(map(str, e.absolute_path)))
    if problems:
        msgs = []
        for e in problems:
            where = "".join(f"[{p}]" if isinstance(p, int) else f".{p}" for p in e.absolute_path)
            msgs.append(f"{what}{where or ' (root)'}: {e.message}")
        raise InputError(msgs)


def _rational_field(value, where: str, nonneg: bool = False) -> Fraction:
    try:
        r = parse_rational(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{where}: {exc}") from None
    if nonneg and r < 0:
        raise InputError(f"{where}: must be non-negative, got {value!r}")
    return r


def instance_from_document(doc: Any) -> Instance:
    _check_schema(doc, INSTANCE_SCHEMA, "instance")
    markup = _rational_field(doc["markup"], "instance.markup", nonneg=True)
    edges = tuple(
        Edge(e["u"], e["v"],
             EdgeCost(e["ca_transport"], e["ca_corruption"], e["cb_transport"], e["cb_corruption"]),
             e.get("capacity"))
        for e in doc["edges"]
    )
    instance = Instance(
        network=Network(doc["node_count"], edges),
        producers=tuple(Producer(p["node"], p["unit_price"]) for p in doc["producers"]),
        consumers=tuple(Consumer(c["node"], c.get("demand", 1)) for c in doc["consumers"]),
        candidate_sites=tuple(doc["candidate_sites"]),
        retailer_count=doc["retailer_count"],
        markup_rate=markup,
        payoff_mode=doc.get("payoff_mode", "revenue"),
        name=doc.get("name", ""),
        comment=doc.get("comment", ""),
    )
    return validate_instance(instance)


def parse_instance(text: str) -> Instance:
    return instance_from_document(_load(text, "instance"))


def instance_to_document(instance: Instance) -> dict:
    doc: dict = {}
    if instance.name:
        doc["name"] = instance.name
    if instance.comment:
        doc["comment"] = instance.comment
    edges = []
    for e in instance.network.edges:
        rec = {"u": e.u, "v": e.v,
               "ca_transport": e.cost.transport_retailer, "ca_corruption": e.cost.corruption_retailer,
               "cb_transport": e.cost.transport_consumer, "cb_corruption": e.cost.corruption_consumer}
        if e.capacity is not None:
            rec["capacity"] = e.capacity
        edges.append(rec)
    doc.update(
        node_count=instance.network.node_count,
        edges=edges,
        producers=[{"node": p.node, "unit_price": p.unit_price} for p in instance.producers],
        consumers=[{"node": c.node, "demand": c.demand} for c in instance.consumers],
        candidate_sites=list(instance.candidate_sites),
        retailer_count=instance.retailer_count,
        markup=render(instance.markup_rate),
        payoff_mode=instance.payoff_mode,
    )
    return doc


def _table(doc: dict, rows_expected: list[int], cols: list[int], what: str) -> DistanceTable:
    values = doc["values"]
    rows = doc.get("rows", rows_expected)
    cols_given = doc.get("cols", cols)
    errors = []
    if list(rows) != list(rows_expected):
        errors.append(f"{what}.rows {rows} do not match {rows_expected}")
    if list(cols_given) != list(cols):
        errors.append(f"{what}.cols {cols_given} do not match candidate sites {cols}")
    if len(values) != len(rows_expected) or any(len(r) != len(cols) for r in values):
        errors.append(f"{what}: expected a {len(rows_expected)}x{len(cols)} matrix")
    if errors:
        raise InputError(errors)
    return DistanceTable(tuple(rows_expected), tuple(cols), tuple(tuple(r) for r in values))


def replay_from_document(doc: Any, instance: Instance) -> Replay:
    _check_schema(doc, REPLAY_SCHEMA, "replay")
    sites = list(instance.candidate_sites)
    producer_sites = consumer_sites = None
    convention: Convention = "d"
    if "producer_site_matrix" in doc:
        pm = doc["producer_site_matrix"]
        convention = pm.get("convention", "d")
        raw = _table(pm, [p.node for p in instance.producers], sites, "replay.producer_site_matrix")
        if convention == "l-plus-d":
            values = []
            for p, row in zip(instance.producers, raw.values):
                shifted = []
                for v in row:
                    if v is not None and v < p.unit_price:
                        raise InputError(f"replay.producer_site_matrix: entry {v} is below unit price {p.unit_price}")
                    shifted.append(None if v is None else v - p.unit_price)
                values.append(tuple(shifted))
            raw = DistanceTable(raw.rows, raw.cols, tuple(values))
        producer_sites = raw
    if "consumer_site_matrix" in doc:
        consumer_sites = _table(doc["consumer_site_matrix"], [c.node for c in instance.consumers], sites,
                                "replay.consumer_site_matrix")
    return Replay(producer_sites, convention, consumer_sites, doc.get("comment", ""))


def parse_replay(text: str, instance: Instance) -> Replay:
    return replay_from_document(_load(text, "replay"), instance)


def replay_to_document(replay: Replay, instance: Instance) -> dict:
    doc: dict = {}
    if replay.comment:
        doc["comment"] = replay.comment
    if replay.producer_sites is not None:
        t = replay.producer_sites
        values = [list(r) for r in t.values]
        if replay.producer_convention == "l-plus-d":
            values = [[None if v is None else v + p.unit_price for v in row]
                      for p, row in zip(instance.producers, values)]
        doc["producer_site_matrix"] = {"convention": replay.producer_convention,
                                       "rows": list(t.rows), "cols": list(t.cols), "values": values}
    if replay.consumer_sites is not None:
        t = replay.consumer_sites
        doc["consumer_site_matrix"] = {"rows": list(t.rows), "cols": list(t.cols),
                                       "values": [list(r) for r in t.values]}
    return doc


def flow_problem_from_document(doc: Any) -> FlowProblem:
    _check_schema(doc, FLOW_SCHEMA, "flow problem")
    edges = tuple(
        AffineEdge(e["id"],
                   _rational_field(e["fixed"], f"flow problem.edges[{i}].fixed"),
                   _rational_field(e["slope"], f"flow problem.edges[{i}].slope"),
                   e.get("label", ""))
        for i, e in enumerate(doc["edges"])
    )
    demand = _rational_field(doc["demand"], "flow problem.demand", nonneg=True)
    return FlowProblem(edges, tuple(tuple(p) for p in doc["paths"]), demand,
                       doc.get("name", ""), doc.get("comment", ""))


def parse_flow_problem(text: str) -> FlowProblem:
    return flow_problem_from_document(_load(text, "flow problem"))


def flow_problem_to_document(problem: FlowProblem) -> dict:
    doc: dict = {}
    if problem.name:
        doc["name"] = problem.name
    if problem.comment:
        doc["comment"] = problem.comment
    edges = []
    for e in problem.edges:
        rec = {"id": e.id, "fixed": render(e.fixed), "slope": render(e.slope)}
        if e.label:
            rec["label"] = e.label
        edges.append(rec)
    doc.update(edges=edges, paths=[list(p) for p in problem.paths], demand=render(problem.demand))
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=1) + "\n"


def fixture_path(name: str) -> Path:
    """Path of a bundled fixture such as ``"example_a.json"``."""
    return Path(str(resources.files("tradenet") / "fixtures" / name))
