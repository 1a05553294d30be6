"""Topologies, digraphs and the derived views used throughout the package.

Vertices are 1-based everywhere, including serialized forms.  A digraph
caches successor/predecessor bitmasks (bit ``v - 1`` stands for vertex
``v``) so the exponential routines elsewhere can work on plain integers.
"""

from __future__ import annotations

import heapq
import itertools
import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Iterator, Mapping

__all__ = [
    "BipartiteTopology",
    "Digraph",
    "UndirectedGraph",
    "DecodingOrder",
    "GraphError",
    "SizeLimitError",
    "build_conflict_digraph",
    "topology_from_conflict",
    "regular_topology",
    "triangular_topology",
    "derived_views",
    "acyclic_order",
    "strong_components",
    "canonical_form",
    "canonical_code",
    "pair_index",
    "digraph_from_code",
    "chordless_cycles_undirected",
    "is_perfect_graph",
    "is_chordal_bipartite",
    "bits",
]


class GraphError(ValueError):
    """Invalid graph or topology data."""


class SizeLimitError(ValueError):
    """An exponential routine was asked to run beyond its size guard."""


def bits(mask: int) -> Iterator[int]:
    """Yield the 1-based vertices whose bits are set in ``mask``."""
    while mask:
        low = mask & -mask
        yield low.bit_length()
        mask ^= low


def _mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << (v - 1)
    return m


@dataclass(frozen=True)
class BipartiteTopology:
    """Uplink connectivity: receiver ``j`` hears every transmitter in ``T_j``."""

    K: int
    transmit_sets: Mapping[int, frozenset[int]]

    def __post_init__(self):
        if self.K < 1:
            raise GraphError(f"K must be positive, got {self.K}")
        sets = {int(j): frozenset(int(i) for i in ts) for j, ts in self.transmit_sets.items()}
        if set(sets) != set(range(1, self.K + 1)):
            raise GraphError("transmit_sets must have exactly one entry per receiver 1..K")
        for j, ts in sets.items():
            if j not in ts:
                raise GraphError(f"receiver {j} must hear its own transmitter")
            bad = [i for i in ts if not 1 <= i <= self.K]
            if bad:
                raise GraphError(f"transmitter index out of range in T_{j}: {sorted(bad)}")
        object.__setattr__(self, "transmit_sets", dict(sorted(sets.items())))

    def edges(self) -> list[tuple[int, int]]:
        """(transmitter, receiver) pairs of the bipartite graph."""
        return [(i, j) for j, ts in self.transmit_sets.items() for i in sorted(ts)]

    def to_json(self) -> dict:
        return {"K": self.K, "transmit_sets": {str(j): sorted(ts) for j, ts in self.transmit_sets.items()}}

    @classmethod
    def from_json(cls, data: Mapping) -> "BipartiteTopology":
        try:
            K = int(data["K"])
            sets = {int(j): ts for j, ts in data["transmit_sets"].items()}
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise GraphError(f"malformed topology JSON: {exc}") from exc
        return cls(K, sets)


@dataclass(frozen=True)
class Digraph:
    """Simple digraph on vertices ``1..n`` (no self-loops)."""

    n: int
    arcs: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise GraphError("vertex count must be non-negative")
        arcs = frozenset((int(u), int(v)) for u, v in self.arcs)
        for u, v in arcs:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise GraphError(f"arc ({u},{v}) out of range for n={self.n}")
        object.__setattr__(self, "arcs", arcs)

    # -- cached adjacency -------------------------------------------------
    @cached_property
    def succ(self) -> tuple[int, ...]:
        """``succ[v]`` is the out-neighbour bitmask of vertex ``v`` (index 0 unused)."""
        s = [0] * (self.n + 1)
        for u, v in self.arcs:
            s[u] |= 1 << (v - 1)
        return tuple(s)

    @cached_property
    def pred(self) -> tuple[int, ...]:
        p = [0] * (self.n + 1)
        for u, v in self.arcs:
            p[v] |= 1 << (u - 1)
        return tuple(p)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def sorted_arcs(self) -> list[tuple[int, int]]:
        return sorted(self.arcs)

    # -- structural queries ----------------------------------------------
    def is_acyclic_mask(self, mask: int) -> bool:
        """True when the sub-digraph induced by ``mask`` has no directed cycle."""
        succ = self.succ
        pred = self.pred
        remaining = mask
        changed = True
        while remaining and changed:
            changed = False
            for v in bits(remaining):
                if not pred[v] & remaining or not succ[v] & remaining:
                    remaining &= ~(1 << (v - 1))
                    changed = True
        return remaining == 0

    def is_acyclic(self, vertices: Iterable[int] | None = None) -> bool:
        mask = self.full_mask if vertices is None else _mask(vertices)
        return self.is_acyclic_mask(mask)

    def induced(self, vertices: Iterable[int]) -> tuple["Digraph", list[int]]:
        """Induced sub-digraph relabelled to ``1..k``; also returns the old labels."""
        keep = sorted(set(vertices))
        index = {v: i + 1 for i, v in enumerate(keep)}
        arcs = {(index[u], index[v]) for u, v in self.arcs if u in index and v in index}
        return Digraph(len(keep), frozenset(arcs)), keep

    def without_arcs(self, arcs: Iterable[tuple[int, int]]) -> "Digraph":
        return Digraph(self.n, self.arcs - frozenset(arcs))

    def with_arcs(self, arcs: Iterable[tuple[int, int]]) -> "Digraph":
        return Digraph(self.n, self.arcs | frozenset(arcs))

    def relabel(self, perm: Mapping[int, int] | tuple[int, ...]) -> "Digraph":
        """Apply ``v -> perm[v]``; a tuple is read as ``perm[v - 1]``."""
        if isinstance(perm, tuple):
            perm = {v: perm[v - 1] for v in self.vertices}
        return Digraph(self.n, frozenset((perm[u], perm[v]) for u, v in self.arcs))

    def in_degree(self, v: int, mask: int | None = None) -> int:
        m = self.full_mask if mask is None else mask
        return (self.pred[v] & m).bit_count()

    def out_degree(self, v: int, mask: int | None = None) -> int:
        m = self.full_mask if mask is None else mask
        return (self.succ[v] & m).bit_count()

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        return {"n": self.n, "arcs": [list(a) for a in self.sorted_arcs()]}

    @classmethod
    def from_json(cls, data: Mapping) -> "Digraph":
        try:
            n = int(data["n"])
            arcs = [tuple(int(x) for x in a) for a in data["arcs"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise GraphError(f"malformed digraph JSON: {exc}") from exc
        if any(len(a) != 2 for a in arcs):
            raise GraphError("every arc must be a pair")
        return cls(n, frozenset(arcs))

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> "Digraph":
        return cls(n, frozenset(arcs))

    def to_dot(self, name: str = "D") -> str:
        """DOT text; bidirected pairs become a single ``dir=both`` edge."""
        lines = [f"digraph {name} {{"]
        lines += [f"  {v};" for v in self.vertices]
        for u, v in self.sorted_arcs():
            if (v, u) in self.arcs:
                if u < v:
                    lines.append(f"  {u} -> {v} [dir=both];")
            else:
                lines.append(f"  {u} -> {v};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_dot(cls, text: str) -> "Digraph":
        """Parse the subset of DOT written by :meth:`to_dot`."""
        verts = set()
        arcs = set()
        for line in text.splitlines():
            line = line.strip().rstrip(";")
            m = re.fullmatch(r"(\d+)\s*->\s*(\d+)(\s*\[dir=both\])?", line)
            if m:
                u, v = int(m.group(1)), int(m.group(2))
                arcs.add((u, v))
                if m.group(3):
                    arcs.add((v, u))
                verts.update((u, v))
            elif re.fullmatch(r"\d+", line):
                verts.add(int(line))
        return cls(max(verts, default=0), frozenset(arcs))

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={self.sorted_arcs()})"


@dataclass(frozen=True)
class UndirectedGraph:
    n: int
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        norm = set()
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))

    @cached_property
    def adj(self) -> tuple[int, ...]:
        a = [0] * (self.n + 1)
        for u, v in self.edges:
            a[u] |= 1 << (v - 1)
            a[v] |= 1 << (u - 1)
        return tuple(a)

    def complement(self) -> "UndirectedGraph":
        all_pairs = itertools.combinations(range(1, self.n + 1), 2)
        return UndirectedGraph(self.n, frozenset(p for p in all_pairs if p not in self.edges))


@dataclass(frozen=True)
class DecodingOrder:
    """A total decoding order; ``order[0]`` is decoded first."""

    order: tuple[int, ...]

    def __post_init__(self):
        order = tuple(int(v) for v in self.order)
        if sorted(order) != list(range(1, len(order) + 1)):
            raise GraphError(f"decoding order must be a permutation of 1..{len(order)}: {order}")
        object.__setattr__(self, "order", order)

    def position(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.order)}

    def precedes(self, i: int, j: int) -> bool:
        pos = self.position()
        return pos[i] < pos[j]


# ---------------------------------------------------------------------------
# topologies


def build_conflict_digraph(t: BipartiteTopology) -> Digraph:
    """Arc ``(i, j)`` whenever transmitter ``i`` interferes at receiver ``j``."""
    arcs = {(i, j) for j, ts in t.transmit_sets.items() for i in ts if i != j}
    return Digraph(t.K, frozenset(arcs))


def topology_from_conflict(d: Digraph) -> BipartiteTopology:
    """Inverse of :func:`build_conflict_digraph`."""
    sets = {j: {j} | set(bits(d.pred[j])) for j in d.vertices}
    return BipartiteTopology(d.n, sets)


def regular_topology(K: int, L: int) -> BipartiteTopology:
    """(K, L) regular network: ``T_j = {j, j+1, ..., j+L-1}`` with wraparound."""
    if K < 1 or L < 1:
        raise GraphError("K and L must be positive")
    if L > K:
        raise GraphError(f"L={L} exceeds K={K}")
    sets = {j: {(j - 1 + s) % K + 1 for s in range(L)} for j in range(1, K + 1)}
    return BipartiteTopology(K, sets)


def triangular_topology(K: int) -> BipartiteTopology:
    """Receiver ``j`` hears transmitters ``1..j``."""
    return BipartiteTopology(K, {j: set(range(1, j + 1)) for j in range(1, K + 1)})


# ---------------------------------------------------------------------------
# views, orders, components


def derived_views(d: Digraph) -> dict:
    """Complement digraph, symmetric part and underlying undirected graph."""
    comp = {(u, v) for u in d.vertices for v in d.vertices if u != v and (u, v) not in d.arcs}
    sym = {(u, v) for u, v in d.arcs if u < v and (v, u) in d.arcs}
    und = {(min(u, v), max(u, v)) for u, v in d.arcs}
    return {
        "complement": Digraph(d.n, frozenset(comp)),
        "symmetric_part": UndirectedGraph(d.n, frozenset(sym)),
        "underlying": UndirectedGraph(d.n, frozenset(und)),
    }


def acyclic_order(d: Digraph) -> tuple[list[int] | None, tuple[int, ...] | None]:
    """Topological order (smallest available source first) or a witness cycle.

    Returns ``(order, None)`` when ``d`` is acyclic and ``(None, cycle)``
    otherwise; the cycle starts at its smallest vertex.
    """
    indeg = {v: d.in_degree(v) for v in d.vertices}
    heap = [v for v in d.vertices if indeg[v] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        u = heapq.heappop(heap)
        order.append(u)
        for w in bits(d.succ[u]):
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(heap, w)
    if len(order) == d.n:
        return order, None
    remaining = d.full_mask & ~_mask(order)
    # every remaining vertex keeps a predecessor inside the remainder
    v = min(bits(remaining))
    seen: dict[int, int] = {}
    walk = []
    while v not in seen:
        seen[v] = len(walk)
        walk.append(v)
        v = min(bits(d.pred[v] & remaining))
    cycle = walk[seen[v]:][::-1]
    k = cycle.index(min(cycle))
    return None, tuple(cycle[k:] + cycle[:k])


def strong_components(d: Digraph) -> list[frozenset[int]]:
    """Strong components, sources of the condensation first (Tarjan, iterative)."""
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    out: list[frozenset[int]] = []
    counter = 0
    for root in d.vertices:
        if root in index:
            continue
        work = [(root, iter(sorted(bits(d.succ[root]))))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(sorted(bits(d.succ[w])))))
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            else:
                work.pop()
                if work:
                    parent = work[-1][0]
                    low[parent] = min(low[parent], low[v])
                if low[v] == index[v]:
                    comp = set()
                    while True:
                        w = stack.pop()
                        on_stack.discard(w)
                        comp.add(w)
                        if w == v:
                            break
                    out.append(frozenset(comp))
    out.reverse()
    return out


# ---------------------------------------------------------------------------
# canonical forms

CANONICAL_MAX_N = 8


def pair_index(n: int) -> dict[tuple[int, int], int]:
    """Row-major position of each ordered pair ``(u, v)``, ``u != v``."""
    pairs = [(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v]
    return {p: k for k, p in enumerate(pairs)}


def _code(n: int, arcs: Iterable[tuple[int, int]], idx: Mapping[tuple[int, int], int]) -> int:
    total = n * (n - 1)
    c = 0
    for a in arcs:
        c |= 1 << (total - 1 - idx[a])
    return c


def digraph_from_code(n: int, code: int) -> Digraph:
    """Inverse of the adjacency bitstring encoding (most significant bit first)."""
    total = n * (n - 1)
    arcs = [p for p, k in pair_index(n).items() if code >> (total - 1 - k) & 1]
    return Digraph(n, frozenset(arcs))


def canonical_code(d: Digraph) -> tuple[int, tuple[int, ...]]:
    """Minimal adjacency code over all relabelings and the relabeling achieving it.

    The permutation is returned as ``perm[v - 1] = new label of v``; the
    lexicographically first minimizing permutation wins.
    """
    if d.n > CANONICAL_MAX_N:
        raise SizeLimitError(f"canonical form limited to n <= {CANONICAL_MAX_N}, got {d.n}")
    idx = pair_index(d.n)
    arcs = d.sorted_arcs()
    best = None
    best_perm = tuple(range(1, d.n + 1))
    for perm in itertools.permutations(range(1, d.n + 1)):
        c = _code(d.n, ((perm[u - 1], perm[v - 1]) for u, v in arcs), idx)
        if best is None or c < best:
            best, best_perm = c, perm
    return (best or 0), best_perm


def canonical_form(d: Digraph) -> tuple[str, tuple[int, ...]]:
    """Canonical encoding ``"n:bitstring"`` plus the canonical relabeling."""
    code, perm = canonical_code(d)
    total = d.n * (d.n - 1)
    return f"{d.n}:{code:0{total}b}" if total else f"{d.n}:", perm


# ---------------------------------------------------------------------------
# undirected helpers


def chordless_cycles_undirected(g: UndirectedGraph, min_length: int = 4) -> Iterator[tuple[int, ...]]:
    """Induced cycles of ``g`` with at least ``min_length`` vertices.

    Each cycle is produced once, starting at its smallest vertex with the
    smaller of its two neighbours second.
    """
    adj = g.adj
    for s in range(1, g.n + 1):
        higher = ~((1 << s) - 1)
        sbit = 1 << (s - 1)
        stack = [(s,)]
        while stack:
            path = stack.pop()
            inner = _mask(path[1:-1])
            for w in bits(adj[path[-1]] & higher & ~_mask(path)):
                if adj[w] & inner:
                    continue
                if len(path) >= 2 and adj[w] & sbit:
                    if len(path) + 1 >= min_length and path[1] < w:
                        yield path + (w,)
                    continue
                stack.append(path + (w,))


def _has_odd_hole(g: UndirectedGraph) -> bool:
    return any(len(c) % 2 == 1 for c in chordless_cycles_undirected(g, 5))


def is_perfect_graph(g: UndirectedGraph) -> bool:
    """No odd hole and no odd antihole (strong perfect graph theorem)."""
    return not _has_odd_hole(g) and not _has_odd_hole(g.complement())


def is_chordal_bipartite(t: BipartiteTopology) -> bool:
    """No induced cycle of length 6 or more in the transmitter/receiver graph."""
    K = t.K
    # transmitters are 1..K, receivers K+1..2K
    edges = {(i, K + j) for i, j in t.edges()}
    g = UndirectedGraph(2 * K, frozenset(edges))
    return next(chordless_cycles_undirected(g, 6), None) is None


def read_json(path: str | Path) -> dict:
    with open(path) as fh:
        return json.load(fh)
