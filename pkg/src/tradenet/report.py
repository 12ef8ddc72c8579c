"""Tabular reports and their text, CSV and JSON renderings.

All cells are strings produced by exact rendering, so the three formats
carry identical values.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Optional, Sequence

from .equilibrium import EquilibriumResult, FlowProblem, PathCosts, VerificationReport
from .exactmath import LinearSystem, render, render_mixed
from .model import Instance
from .pipeline import CompromiseRun, Metric

Format = Literal["text", "csv", "json"]
Display = Literal["l-plus-d", "d"]


@dataclass
class Table:
    name: str
    columns: list[str]
    rows: list[list[str]] = field(default_factory=list)


@dataclass
class Report:
    title: str
    tables: list[Table] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def add(self, name: str, columns: Sequence[str], rows: Sequence[Sequence]) -> Table:
        t = Table(name, list(columns), [[_cell(v) for v in row] for row in rows])
        self.tables.append(t)
        return t

    def table(self, name: str) -> Table:
        for t in self.tables:
            if t.name == name:
                return t
        raise KeyError(name)


def _cell(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, (int, Fraction)) and not isinstance(v, bool):
        return render(v)
    return str(v)


def render_report(report: Report, fmt: Format = "text") -> str:
    if fmt == "json":
        return json.dumps({
            "title": report.title,
            "tables": [{"name": t.name, "columns": t.columns, "rows": t.rows} for t in report.tables],
            "notes": report.notes,
        }, indent=1) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([f"# {report.title}"])
        for t in report.tables:
            w.writerow([])
            w.writerow([f"# {t.name}"])
            w.writerow(t.columns)
            w.writerows(t.rows)
        for note in report.notes:
            w.writerow([])
            w.writerow([f"# note: {note}"])
        return buf.getvalue()
    if fmt == "text":
        out = [report.title, "=" * len(report.title)]
        for t in report.tables:
            out += ["", t.name]
            grid = [t.columns] + t.rows
            widths = [max(len(r[i]) for r in grid if i < len(r)) for i in range(len(t.columns))]
            for k, row in enumerate(grid):
                out.append("  ".join(c.rjust(w) for c, w in zip(row, widths)).rstrip())
                if k == 0:
                    out.append("  ".join("-" * w for w in widths))
        for note in report.notes:
            out += ["", f"note: {note}"]
        return "\n".join(out) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def parse_csv_report(text: str) -> dict[str, list[list[str]]]:
    """Read a CSV rendering back into ``{table name: [header, *rows]}``.

    The report title on the first line is skipped.
    """
    tables: dict[str, list[list[str]]] = {}
    current: Optional[list] = None
    rows = csv.reader(io.StringIO(text))
    next(rows, None)
    for row in rows:
        if not row:
            current = None
        elif len(row) == 1 and row[0].startswith("# "):
            name = row[0][2:]
            if name.startswith("note: "):
                current = None
            elif current is None and name in tables:
                raise ValueError(f"duplicate table {name!r}")
            else:
                current = tables.setdefault(name, [])
        elif current is not None:
            current.append(row)
    return tables


def _node(v: int) -> str:
    return f"x{v}"


def _add_producer_table(rep: Report, instance: Instance, table, display: Display) -> None:
    if display not in ("l-plus-d", "d"):
        raise ValueError(f"unknown display convention {display!r}")
    label = "unit price + distance" if display == "l-plus-d" else "distance"
    rows = []
    for p, drow in zip(instance.producers, table.values):
        shift = p.unit_price if display == "l-plus-d" else 0
        rows.append([_node(p.node)] + [None if d is None else d + shift for d in drow])
    rep.add(f"producer-site costs ({label})", ["producer"] + [_node(s) for s in instance.candidate_sites], rows)


def compromise_report(run: CompromiseRun, display: Display = "l-plus-d") -> Report:
    inst = run.instance
    sites = inst.candidate_sites
    site_cols = [_node(s) for s in sites]
    rep = Report(f"compromise placement{': ' + inst.name if inst.name else ''}")

    _add_producer_table(rep, inst, run.producer_sites, display)

    factor = 1 + Fraction(inst.markup_rate)
    rows = []
    for p, drow in zip(inst.producers, run.producer_sites.values):
        rows.append([_node(p.node)] + [None if d is None else factor * (p.unit_price + d) for d in drow])
    prices = run.incomes.site_prices
    rows.append(["site price"] + [prices[s].price for s in sites])
    rows.append(["supplier"] + [_node(inst.producers[prices[s].producer].node) for s in sites])
    rep.add("prices", ["producer"] + site_cols, rows)

    rep.add("consumer-site costs", ["consumer"] + site_cols,
            [[_node(c.node)] + list(drow) for c, drow in zip(inst.consumers, run.consumer_sites.values)])

    players = [f"retailer {j + 1}" for j in range(inst.retailer_count)]
    labels = [s.label() for s in run.incomes.situations]
    rep.add("income matrix", ["situation"] + players,
            [[lab] + list(row) for lab, row in zip(labels, run.incomes.incomes)])
    res = run.result
    rep.add("ideal vector", players, [list(res.ideal)])
    rep.add("residual matrix", ["situation"] + players,
            [[lab] + list(row) for lab, row in zip(labels, res.residuals)])
    rep.add("row maxima", ["situation", "max residual"], [[lab, m] for lab, m in zip(labels, res.row_max)])
    chosen = run.selected_sites
    rep.add("selection", ["situation", "index", "sites", "value", "residual row"], [[
        labels[res.selected], res.selected + 1,
        " ".join(_node(s) for s in sorted(chosen)),
        res.value,
        "(" + ", ".join(render(v) for v in res.residuals[res.selected]) + ")",
    ]])

    unserved = sorted({ci for miss in run.incomes.unserved for ci in miss})
    if unserved:
        rep.notes.append("consumers reaching no placed site in some situation: "
                         + ", ".join(_node(inst.consumers[ci].node) for ci in unserved))

    if run.replay is not None:
        rep.add("replay vs recomputed distances", ["table", "row", "col", "replayed", "recomputed"],
                [[d.table, _node(d.row), _node(d.col), d.replayed, d.recomputed] for d in run.diffs])
        n = len(run.diffs)
        rep.notes.append("replayed distance tables agree with recomputation" if n == 0
                         else f"{n} replayed distance entries differ from recomputation")
    return rep


def distances_report(instance: Instance, metric: Metric, table, display: Display = "l-plus-d") -> Report:
    rep = Report(f"{metric} distances{': ' + instance.name if instance.name else ''}")
    cols = [_node(s) for s in instance.candidate_sites]
    if metric == "retailer":
        _add_producer_table(rep, instance, table, display)
    else:
        rep.add("consumer-site costs", ["consumer"] + cols,
                [[_node(c.node)] + list(drow) for c, drow in zip(instance.consumers, table.values)])
    return rep


def affine_form(coeffs: Sequence[Fraction], constant: Fraction = Fraction(0)) -> str:
    """Render e.g. ``11x1 + 10x2 + 20``; zero terms are dropped."""
    parts = []
    for j, a in enumerate(coeffs, 1):
        if a == 0:
            continue
        mag = abs(a)
        coef = "" if mag == 1 else (render(mag) if mag.denominator == 1 else f"({render(mag)})")
        parts.append(("-" if a < 0 else "+", f"{coef}x{j}"))
    if constant != 0 or not parts:
        parts.append(("-" if constant < 0 else "+", render(abs(constant))))
    sign, first = parts[0]
    text = ("-" if sign == "-" else "") + first
    for sign, term in parts[1:]:
        text += f" {sign} {term}"
    return text


def equilibrium_report(problem: FlowProblem, costs: PathCosts, result: EquilibriumResult,
                       check: VerificationReport) -> Report:
    rep = Report(f"path-flow equilibrium{': ' + problem.name if problem.name else ''} ({result.mode})")
    rep.add("path cost forms", ["path", "edges", "cost"],
            [[i + 1, "-".join(str(e) for e in p), affine_form(row, c)]
             for i, (p, row, c) in enumerate(zip(problem.paths, costs.coefficients, costs.constants))])
    if result.system is not None:
        rep.add("linear system" + (" (accepted support)" if result.mode == "nonnegative" else ""),
                ["equation", "lhs", "rhs"], _system_rows(result.system, result, problem))
    rep.add("flows", ["path", "flow"], [[i + 1, x] for i, x in enumerate(result.flows)])
    rep.add("common cost", ["exact", "mixed"], [[result.common_cost, render_mixed(result.common_cost)]])
    rep.add("verification", ["path", "flow", "cost"],
            [[i + 1, x, c] for i, (x, c) in enumerate(zip(result.flows, check.path_costs))])
    rep.add("verdict", ["status", "violations"],
            [["ok" if check.ok else "FAILED", "; ".join(check.violations) or "-"]])
    return rep


def _system_rows(system: LinearSystem, result: EquilibriumResult, problem: FlowProblem) -> list[list]:
    rows = []
    for i, (row, b) in enumerate(zip(system.a, system.b), 1):
        full = [Fraction(0)] * len(problem.paths)
        for k, v in zip(result.system_paths, row):
            full[k] = v
        rows.append([i, affine_form(full), b])
    return rows
