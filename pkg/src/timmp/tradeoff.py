"""Budgeted message passing: fewest backhaul passings for a target linear rate.

Receiver ``j`` sees message ``i`` through the pattern matrix entry in row
``j``, column ``i``: one on the diagonal, free when ``(i, j)`` is not a
conflict arc or when ``W_i`` is passed to receiver ``j``, and zero
otherwise.  A passing set must form an acyclic digraph so that passed
messages can actually be decoded before they are forwarded.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .graphs import BipartiteTopology, Digraph, GraphError, SizeLimitError, build_conflict_digraph
from .sic import MINRANK_MAX_N, min_rank_free

__all__ = [
    "PassingPattern",
    "pattern_minrank",
    "tradeoff_curve",
    "breakpoints",
    "TRADEOFF_MAX_ARCS",
]

TRADEOFF_MAX_ARCS = 16


@dataclass(frozen=True)
class PassingPattern:
    """Conflict digraph ``conflict`` with passed arcs ``passed``."""

    conflict: Digraph
    passed: frozenset = frozenset()

    def __post_init__(self):
        passed = frozenset((int(i), int(j)) for i, j in self.passed)
        object.__setattr__(self, "passed", passed)
        extra = passed - self.conflict.arcs
        if extra:
            raise GraphError(f"passed arcs {sorted(extra)} are not conflict arcs")
        if not Digraph(self.conflict.n, passed).is_acyclic_mask(self.conflict.full_mask):
            raise GraphError("passed arcs must form an acyclic digraph")

    @property
    def n(self) -> int:
        return self.conflict.n

    def tag(self, row: int, col: int) -> str:
        """``one``, ``zero`` or ``free`` for the 1-based entry (row = receiver, col = message)."""
        if row == col:
            return "one"
        if (col, row) in self.conflict.arcs and (col, row) not in self.passed:
            return "zero"
        return "free"

    def free_rows(self) -> list[int]:
        rows = []
        for j in range(1, self.n + 1):
            mask = 0
            for i in range(1, self.n + 1):
                if self.tag(j, i) == "free":
                    mask |= 1 << (i - 1)
            rows.append(mask)
        return rows


def pattern_minrank(pat: PassingPattern) -> int:
    """Minimum GF(2) rank over completions of the pattern.

    Examples
    --------
    >>> from timmp.catalog import directed_cycle
    >>> pattern_minrank(PassingPattern(directed_cycle(2), frozenset({(1, 2)})))
    2
    """
    if pat.n > MINRANK_MAX_N:
        raise SizeLimitError(f"pattern minrank limited to n <= {MINRANK_MAX_N}, got {pat.n}")
    return min_rank_free(pat.free_rows())


def _acyclic(n: int, arcs) -> bool:
    d = Digraph(n, frozenset(arcs))
    return d.is_acyclic_mask(d.full_mask)


def tradeoff_curve(t: BipartiteTopology | Digraph, p_max: int) -> list[tuple[int, int, tuple]]:
    """``(p, r(p), X)`` for ``p = 0..p_max``.

    ``r(p)`` is the least pattern minrank over acyclic passing sets ``X`` with
    ``|X| <= p``; ``X`` is the smallest such set, first in lexicographic
    order among those of its size.
    """
    d = t if isinstance(t, Digraph) else build_conflict_digraph(t)
    if p_max < 0:
        raise GraphError("budget must be non-negative")
    arcs = d.sorted_arcs()
    if len(arcs) > TRADEOFF_MAX_ARCS:
        raise SizeLimitError(f"tradeoff limited to {TRADEOFF_MAX_ARCS} conflict arcs, got {len(arcs)}")
    if d.n > MINRANK_MAX_N:
        raise SizeLimitError(f"pattern minrank limited to n <= {MINRANK_MAX_N}, got {d.n}")
    curve = []
    best = None
    for p in range(p_max + 1):
        if p <= len(arcs):
            for X in itertools.combinations(arcs, p):
                if not _acyclic(d.n, X):
                    continue
                r = pattern_minrank(PassingPattern(d, frozenset(X)))
                if best is None or r < best[0]:
                    best = (r, X)
        curve.append((p, best[0], best[1]))
    return curve


def breakpoints(curve) -> list[tuple[int, int]]:
    """Budgets at which the rate first reaches each of its values."""
    out = []
    for p, r, *_ in curve:
        if not out or r < out[-1][1]:
            out.append((p, r))
    return out
