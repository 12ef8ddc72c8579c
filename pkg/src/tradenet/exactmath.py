"""Exact rational helpers and a fraction-preserving linear solver.

Rationals are :class:`fractions.Fraction` throughout; this module only adds
parsing/rendering in the formats used by the reports and instance files, and
Gaussian elimination over the rationals.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import InconsistentSystemError, SingularSystemError

Rational = Fraction
RationalLike = Union[int, Fraction, str]

_MIXED = re.compile(r"^\s*([+-]?)(\d+)\s+(\d+)\s*/\s*(\d+)\s*$")


def rational(numerator: int | Fraction, denominator: int = 1) -> Fraction:
    """Build a canonical rational; a zero denominator raises ZeroDivisionError."""
    if denominator == 0:
        raise ZeroDivisionError(f"zero denominator in {numerator}/{denominator}")
    return Fraction(numerator, denominator)


def parse_rational(text: RationalLike) -> Fraction:
    """Parse ``"n"``, ``"p/q"`` or the mixed form ``"w r/q"``.

    A unicode minus sign is accepted in place of ``-``.
    """
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"not a rational: {text!r}")
    s = text.replace("−", "-").strip()
    m = _MIXED.match(s)
    if m:
        sign, whole, num, den = m.groups()
        if int(den) == 0:
            raise ZeroDivisionError(f"zero denominator in {text!r}")
        value = int(whole) + Fraction(int(num), int(den))
        return -value if sign == "-" else value
    if not re.fullmatch(r"[+-]?\d+(\s*/\s*[+-]?\d+)?", s):
        raise ValueError(f"not a rational: {text!r}")
    if "/" in s:
        num, den = (int(part) for part in s.split("/"))
        return rational(num, den)
    return Fraction(int(s))


def render(value: Fraction | int) -> str:
    """``"p/q"``, or ``"n"`` when the denominator is 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def render_mixed(value: Fraction | int) -> str:
    """Mixed-number form, e.g. 443/13 -> ``"34 1/13"``; proper fractions stay ``"p/q"``."""
    value = Fraction(value)
    if value.denominator == 1 or abs(value) < 1:
        return render(value)
    sign = "-" if value < 0 else ""
    whole, rest = divmod(abs(value.numerator), value.denominator)
    return f"{sign}{whole} {rest}/{value.denominator}"


@dataclass(frozen=True)
class LinearSystem:
    a: tuple[tuple[Fraction, ...], ...]
    b: tuple[Fraction, ...]

    @classmethod
    def of(cls, a: Sequence[Sequence[RationalLike]], b: Sequence[RationalLike]) -> "LinearSystem":
        rows = tuple(tuple(parse_rational(x) for x in row) for row in a)
        rhs = tuple(parse_rational(x) for x in b)
        m = len(rows)
        if any(len(row) != m for row in rows):
            raise ValueError("coefficient matrix must be square")
        if len(rhs) != m:
            raise ValueError(f"right-hand side has length {len(rhs)}, expected {m}")
        return cls(rows, rhs)

    @property
    def size(self) -> int:
        return len(self.b)

    def residual(self, x: Sequence[Fraction]) -> list[Fraction]:
        return [sum((aij * xj for aij, xj in zip(row, x)), Fraction(0)) - bi
                for row, bi in zip(self.a, self.b)]


def solve_linear_system(system: LinearSystem) -> list[Fraction]:
    """Solve ``a x = b`` exactly.

    Elimination takes the first nonzero pivot in row order; no magnitude-based
    pivoting is needed since nothing is rounded. Raises
    :class:`InconsistentSystemError` when no solution exists and
    :class:`SingularSystemError` when solutions exist but are not unique.
    """
    m = system.size
    aug = [list(row) + [bi] for row, bi in zip(system.a, system.b)]

    pivot_cols: list[int] = []
    r = 0
    for c in range(m):
        p = next((i for i in range(r, m) if aug[i][c] != 0), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        piv = aug[r][c]
        aug[r] = [v / piv for v in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [vi - f * vr for vi, vr in zip(aug[i], aug[r])]
        pivot_cols.append(c)
        r += 1

    # rows r.. are all-zero on the left
    if any(aug[i][m] != 0 for i in range(r, m)):
        raise InconsistentSystemError("linear system is inconsistent", system)
    if r < m:
        raise SingularSystemError(f"linear system has rank {r} < {m}; solution is not unique", system)
    return [aug[i][m] for i in range(m)]
