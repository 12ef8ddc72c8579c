"""All-pairs shortest path distances over a cost view.

Unreachable pairs are ``None`` rather than a large sentinel number, so no
arithmetic can silently run on a fake infinity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .model import CostView

Distance = Optional[int]


@dataclass(frozen=True)
class CostMatrix:
    n: int
    dist: tuple[tuple[Distance, ...], ...]

    def distance(self, u: int, v: int) -> Distance:
        return self.dist[u][v]


@dataclass(frozen=True)
class DistanceTable:
    """A rows x cols slice of distances, keyed by node id."""

    rows: tuple[int, ...]
    cols: tuple[int, ...]
    values: tuple[tuple[Distance, ...], ...]

    def distance(self, u: int, v: int) -> Distance:
        try:
            return self.values[self.rows.index(u)][self.cols.index(v)]
        except ValueError:
            raise KeyError(f"no entry for ({u}, {v})") from None


def _check_view(view: CostView) -> int:
    n = len(view)
    for i, row in enumerate(view):
        if len(row) != n:
            raise ValueError("cost view must be square")
        for j, w in enumerate(row):
            if w is not None and w < 0:
                raise ValueError(f"negative weight {w} on ({i}, {j})")
    return n


def floyd_all_pairs(view: CostView) -> CostMatrix:
    """Floyd-Warshall with loop order k, i, j ascending.

    Python integers are unbounded, so sums never overflow; the O(n^3) pure
    Python loop is practical up to a few hundred nodes.
    """
    n = _check_view(view)
    d = [list(row) for row in view]
    for v in range(n):
        d[v][v] = 0
    for k in range(n):
        dk = d[k]
        for i in range(n):
            dik = d[i][k]
            if dik is None:
                continue
            di = d[i]
            for j in range(n):
                dkj = dk[j]
                if dkj is None:
                    continue
                alt = dik + dkj
                if di[j] is None or alt < di[j]:
                    di[j] = alt
    return CostMatrix(n, tuple(tuple(row) for row in d))


def oracle_shortest(view: CostView, src: int, dst: int) -> Distance:
    """Minimum weight over every simple src-dst path, by exhaustive DFS.

    Exponential; meant for checking :func:`floyd_all_pairs` on small graphs.
    Prefixes already no cheaper than the best complete path are cut, which is
    safe because weights are nonnegative.
    """
    n = _check_view(view)
    if src == dst:
        return 0
    best: Distance = None
    on_path = [False] * n
    on_path[src] = True

    def walk(u: int, acc: int) -> None:
        nonlocal best
        for v in range(n):
            w = view[u][v]
            if v == u or w is None or on_path[v]:
                continue
            if best is not None and acc + w >= best:
                continue
            if v == dst:
                if best is None or acc + w < best:
                    best = acc + w
                continue
            on_path[v] = True
            walk(v, acc + w)
            on_path[v] = False

    walk(src, 0)
    return best


def select_distances(matrix: CostMatrix, rows: Sequence[int], cols: Sequence[int]) -> DistanceTable:
    for x in list(rows) + list(cols):
        if not isinstance(x, int) or not 0 <= x < matrix.n:
            raise ValueError(f"node {x!r} out of range [0, {matrix.n})")
    values = tuple(tuple(matrix.dist[r][c] for c in cols) for r in rows)
    return DistanceTable(tuple(rows), tuple(cols), values)
