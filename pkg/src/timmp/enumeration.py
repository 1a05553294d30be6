"""Exact enumeration of cliques, chordless dicycles and acyclic sets.

All routines work on vertex bitmasks of a :class:`~timmp.graphs.Digraph`
and return plain tuples of 1-based vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .graphs import Digraph, SizeLimitError, bits

__all__ = [
    "StructureFamily",
    "maximal_cliques",
    "minimal_dicycles",
    "acyclic_sets",
    "maximal_acyclic_sets",
    "mais_number",
    "weak_degeneracy",
    "degeneracy_profile",
    "ENUMERATION_MAX_N",
]

ENUMERATION_MAX_N = 20


def _guard(d: Digraph, limit: int = ENUMERATION_MAX_N) -> None:
    if d.n > limit:
        raise SizeLimitError(f"enumeration limited to n <= {limit}, got {d.n}")


def _tuple(mask: int) -> tuple[int, ...]:
    return tuple(bits(mask))


def _mask(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << (v - 1)
    return m


@dataclass(frozen=True)
class StructureFamily:
    """A family of vertex sets of one kind (``clique``, ``dicycle`` or ``acyclic_set``).

    Clique and acyclic-set members are sorted; dicycle members list the cycle
    in arc order starting from the smallest vertex.
    """

    kind: str
    members: tuple[tuple[int, ...], ...]

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def sets(self) -> list[frozenset[int]]:
        return [frozenset(m) for m in self.members]

    def to_json(self) -> list[list[int]]:
        return [list(m) for m in self.members]


def _sym_adj(d: Digraph) -> list[int]:
    return [d.succ[v] & d.pred[v] for v in range(d.n + 1)]


def maximal_cliques(d: Digraph) -> StructureFamily:
    """Maximal cliques of the symmetric part, singletons included.

    Examples
    --------
    >>> from timmp.graphs import Digraph
    >>> k4 = Digraph(4, frozenset((u, v) for u in range(1, 5) for v in range(1, 5) if u != v))
    >>> maximal_cliques(k4).members
    ((1, 2, 3, 4),)
    """
    adj = _sym_adj(d)
    out: list[tuple[int, ...]] = []

    def expand(R: int, P: int, X: int) -> None:
        if not P and not X:
            out.append(_tuple(R))
            return
        # Tomita pivot: vertex of P|X with most neighbours in P
        pivot = max(bits(P | X), key=lambda u: (adj[u] & P).bit_count())
        for v in bits(P & ~adj[pivot]):
            bit = 1 << (v - 1)
            expand(R | bit, P & adj[v], X & adj[v])
            P &= ~bit
            X |= bit

    if d.n:
        expand(0, d.full_mask, 0)
    return StructureFamily("clique", tuple(sorted(out)))


def minimal_dicycles(d: Digraph) -> StructureFamily:
    """Induced chordless directed cycles, bidirected pairs included.

    A cycle of length three or more qualifies only if its vertex set induces
    exactly the cycle arcs, so reverse arcs count as chords.
    """
    succ, pred = d.succ, d.pred
    both = [succ[v] | pred[v] for v in range(d.n + 1)]
    out: list[tuple[int, ...]] = []
    for u, v in sorted(d.arcs):
        if u < v and (v, u) in d.arcs:
            out.append((u, v))
    for s in d.vertices:
        sbit = 1 << (s - 1)
        higher = ~((1 << s) - 1)
        stack: list[tuple[int, ...]] = [(s,)]
        while stack:
            path = stack.pop()
            last = path[-1]
            inner = _mask(path[1:-1])
            used = _mask(path)
            for w in bits(succ[last] & higher & ~used):
                if both[w] & inner or pred[last] & (1 << (w - 1)):
                    continue
                to_s = succ[w] & sbit
                from_s = pred[w] & sbit
                if len(path) == 1:
                    if to_s:
                        continue  # 2-cycle, already listed
                    stack.append(path + (w,))
                    continue
                if from_s:
                    continue
                if to_s:
                    out.append(path + (w,))
                    continue
                stack.append(path + (w,))
    out.sort(key=lambda c: (len(c), c))
    return StructureFamily("dicycle", tuple(out))


def _extends_acyclic(succ, pred, S: int, v: int) -> bool:
    """True when adding ``v`` to the acyclic set ``S`` keeps it acyclic."""
    target = pred[v] & S
    if not target:
        return True
    frontier = succ[v] & S
    seen = frontier
    while frontier:
        if frontier & target:
            return False
        nxt = 0
        for u in bits(frontier):
            nxt |= succ[u]
        frontier = nxt & S & ~seen
        seen |= frontier
    return True


def _acyclic_masks(d: Digraph) -> Iterator[int]:
    succ, pred = d.succ, d.pred
    stack = [(0, 1)]
    while stack:
        S, start = stack.pop()
        if S:
            yield S
        for v in range(start, d.n + 1):
            if _extends_acyclic(succ, pred, S, v):
                stack.append((S | 1 << (v - 1), v + 1))


def acyclic_sets(d: Digraph, limit: int = 16) -> StructureFamily:
    """Every non-empty acyclic vertex set (used by the local coloring LP)."""
    _guard(d, limit)
    members = sorted((_tuple(m) for m in _acyclic_masks(d)), key=lambda t: (len(t), t))
    return StructureFamily("acyclic_set", tuple(members))


def _maximal_acyclic_masks(d: Digraph) -> list[int]:
    succ, pred = d.succ, d.pred
    out = []
    for S in _acyclic_masks(d):
        if all(not _extends_acyclic(succ, pred, S, v) for v in bits(d.full_mask & ~S)):
            out.append(S)
    return out


def maximal_acyclic_sets(d: Digraph) -> StructureFamily:
    """Inclusion-maximal vertex sets inducing an acyclic sub-digraph."""
    _guard(d)
    if d.n == 0:
        return StructureFamily("acyclic_set", ())
    members = sorted(_tuple(m) for m in _maximal_acyclic_masks(d))
    return StructureFamily("acyclic_set", tuple(members))


def mais_number(d: Digraph) -> int:
    """Size of a largest acyclic induced sub-digraph."""
    _guard(d)
    return max((m.bit_count() for m in _acyclic_masks(d)), default=0)


def weak_degeneracy(d: Digraph, mask: int | None = None) -> int:
    """Least ``m`` such that every induced sub-digraph has a vertex with
    ``min(in-degree, out-degree) <= m``.

    Computed by peeling a minimum-score vertex; the score never increases
    when vertices are deleted, so the largest score seen is exact.
    """
    remaining = d.full_mask if mask is None else mask
    succ, pred = d.succ, d.pred
    best = 0
    while remaining:
        v, score = min(
            ((u, min((succ[u] & remaining).bit_count(), (pred[u] & remaining).bit_count()))
             for u in bits(remaining)),
            key=lambda t: (t[1], t[0]),
        )
        best = max(best, score)
        remaining &= ~(1 << (v - 1))
    return best


def degeneracy_profile(d: Digraph) -> dict:
    """Weak degeneracy, partial clique degree and dicycle parities.

    Returns
    -------
    dict
        ``weak_degeneracy`` (int), ``partial_clique_degree`` (maximum
        in-degree) and ``dicycle_parities`` (subset of ``{"odd", "even"}``
        over the chordless dicycles).
    """
    _guard(d)
    parities = {"even" if len(c) % 2 == 0 else "odd" for c in minimal_dicycles(d)}
    return {
        "weak_degeneracy": weak_degeneracy(d),
        "partial_clique_degree": max((d.in_degree(v) for v in d.vertices), default=0),
        "dicycle_parities": parities,
    }
