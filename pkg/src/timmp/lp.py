"""Exact rational linear programming.

Only the packing form ``max c.x  s.t.  A x <= b, x >= 0`` with ``b >= 0``
is needed here: the origin is feasible so a single-phase simplex suffices,
and the covering problems of interest are solved through their packing
duals.  Pivoting follows Bland's rule, so the method terminates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

__all__ = ["LPResult", "UnboundedError", "maximize_packing", "format_rational", "parse_rational"]


class UnboundedError(ArithmeticError):
    """The packing LP has no finite optimum."""


@dataclass(frozen=True)
class LPResult:
    """Optimal value, primal point and dual multipliers (one per row)."""

    value: Fraction
    x: tuple[Fraction, ...]
    duals: tuple[Fraction, ...]


def maximize_packing(
    c: Sequence, A: Sequence[Sequence], b: Sequence
) -> LPResult:
    """Solve ``max c.x`` subject to ``A x <= b``, ``x >= 0`` exactly.

    Parameters
    ----------
    c : sequence of numbers
        Objective coefficients, length ``n``.
    A : sequence of sequences
        ``m`` rows of length ``n``.
    b : sequence of numbers
        Non-negative right-hand sides, length ``m``.

    Returns
    -------
    LPResult
        ``duals[i]`` is the optimal multiplier of row ``i``; by strong duality
        ``sum(duals[i] * b[i]) == value``.

    Raises
    ------
    ValueError
        If some ``b[i]`` is negative or the shapes disagree.
    UnboundedError
        If the objective is unbounded.
    """
    m, n = len(A), len(c)
    if len(b) != m or any(len(row) != n for row in A):
        raise ValueError("inconsistent LP dimensions")
    if any(Fraction(v) < 0 for v in b):
        raise ValueError("right-hand side must be non-negative")
    width = n + m
    # rows: [coefficients | slacks | rhs]
    T = []
    for i, row in enumerate(A):
        r = [Fraction(v) for v in row] + [Fraction(0)] * m + [Fraction(b[i])]
        r[n + i] = Fraction(1)
        T.append(r)
    # objective row stores z_j - c_j; optimal when all entries are >= 0
    z = [-Fraction(v) for v in c] + [Fraction(0)] * m + [Fraction(0)]
    basis = [n + i for i in range(m)]

    while True:
        enter = next((j for j in range(width) if z[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            raise UnboundedError("objective is unbounded")
        prow = T[leave]
        piv = prow[enter]
        if piv != 1:
            prow = [v / piv for v in prow]
            T[leave] = prow
        nz = [j for j, v in enumerate(prow) if v]
        for i in range(m):
            if i != leave:
                f = T[i][enter]
                if f:
                    row = T[i]
                    for j in nz:
                        row[j] -= f * prow[j]
        f = z[enter]
        for j in nz:
            z[j] -= f * prow[j]
        basis[leave] = enter

    x = [Fraction(0)] * width
    for i, j in enumerate(basis):
        x[j] = T[i][-1]
    return LPResult(z[-1], tuple(x[:n]), tuple(z[n:n + m]))


def format_rational(q) -> str:
    """Render a rational as ``"p/q"`` (integers as ``"p"``)."""
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s)
