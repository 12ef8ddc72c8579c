"""Compromise (minimax-regret) selection over an income matrix.

Rows are situations, columns are players. The ideal vector holds each
player's best income; residuals are shortfalls from it; the compromise is
the row whose worst shortfall is smallest.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Optional, Sequence

TiePolicy = Literal["first", "lex"]
Matrix = Sequence[Sequence[Fraction]]


@dataclass(frozen=True)
class CompromiseResult:
    ideal: tuple[Fraction, ...]
    residuals: tuple[tuple[Fraction, ...], ...]
    row_max: tuple[Fraction, ...]
    selected: int
    value: Fraction


def _width(incomes: Matrix) -> int:
    if not incomes:
        raise ValueError("income matrix has no situations")
    n = len(incomes[0])
    if n == 0 or any(len(row) != n for row in incomes):
        raise ValueError("income matrix rows must be non-empty and of equal length")
    return n


def ideal_vector(incomes: Matrix) -> tuple[Fraction, ...]:
    n = _width(incomes)
    return tuple(max(Fraction(row[j]) for row in incomes) for j in range(n))


def residual_matrix(incomes: Matrix, ideal: Sequence[Fraction]) -> tuple[tuple[Fraction, ...], ...]:
    n = _width(incomes)
    if len(ideal) != n:
        raise ValueError(f"ideal vector has {len(ideal)} entries, income rows have {n}")
    return tuple(tuple(Fraction(m) - Fraction(r) for m, r in zip(ideal, row)) for row in incomes)


def _pick(values: Sequence[Fraction], tie_policy: TiePolicy, keys: Optional[Sequence]) -> int:
    best = min(values)
    tied = [s for s, v in enumerate(values) if v == best]
    if tie_policy == "first":
        return tied[0]
    if tie_policy == "lex":
        if keys is None:
            raise ValueError("tie policy 'lex' needs situation keys")
        return min(tied, key=lambda s: (tuple(sorted(keys[s])), s))
    raise ValueError(f"unknown tie policy {tie_policy!r}")


def compromise_select(
    residuals: Matrix, tie_policy: TiePolicy = "first", keys: Optional[Sequence] = None
) -> tuple[int, Fraction, tuple[Fraction, ...]]:
    """Return ``(selected, value, row_max)``.

    ``keys`` (the site tuple of each situation) is only consulted by the
    ``lex`` tie policy, which prefers the lexicographically smallest sorted
    site tuple among tied rows.
    """
    _width(residuals)
    row_max = tuple(max(row) for row in residuals)
    s = _pick(row_max, tie_policy, keys)
    return s, row_max[s], row_max


def compromise(incomes: Matrix, tie_policy: TiePolicy = "first", keys: Optional[Sequence] = None) -> CompromiseResult:
    ideal = ideal_vector(incomes)
    residuals = residual_matrix(incomes, ideal)
    selected, value, row_max = compromise_select(residuals, tie_policy, keys)
    return CompromiseResult(ideal, residuals, row_max, selected, value)


def compromise_oracle(incomes: Matrix, tie_policy: TiePolicy = "first", keys: Optional[Sequence] = None) -> tuple[int, Fraction]:
    # Direct scan: no ideal vector or residual matrix is materialized.
    n = _width(incomes)
    worst = []
    for row in incomes:
        w = None
        for j in range(n):
            gap = max(Fraction(other[j]) for other in incomes) - Fraction(row[j])
            if w is None or gap > w:
                w = gap
        worst.append(w)
    if tie_policy == "lex" and keys is None:
        raise ValueError("tie policy 'lex' needs situation keys")
    best_s = 0
    for s in range(1, len(worst)):
        if worst[s] < worst[best_s]:
            best_s = s
        elif worst[s] == worst[best_s] and tie_policy == "lex" and sorted(keys[s]) < sorted(keys[best_s]):
            best_s = s
    return best_s, worst[best_s]
