"""Independent brute-force oracles and hypothesis strategies shared by the tests."""

from __future__ import annotations

import itertools
from fractions import Fraction

from hypothesis import strategies as st

from timmp.graphs import Digraph


def random_digraph(rng, n: int, p: float = 0.5) -> Digraph:
    arcs = {(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v and rng.random() < p}
    return Digraph(n, frozenset(arcs))


@st.composite
def digraphs(draw, min_n: int = 1, max_n: int = 5):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Digraph(n, frozenset(chosen))


def subset_is_acyclic(d: Digraph, verts) -> bool:
    """Acyclic iff some vertex ordering has every induced arc pointing forward."""
    verts = list(verts)
    arcs = [(u, v) for u, v in d.arcs if u in verts and v in verts]
    if not arcs:
        return True
    for perm in itertools.permutations(verts):
        pos = {v: i for i, v in enumerate(perm)}
        if all(pos[u] < pos[v] for u, v in arcs):
            return True
    return False


def acyclic_subsets(d: Digraph) -> list[frozenset]:
    out = []
    for k in range(1, d.n + 1):
        for s in itertools.combinations(range(1, d.n + 1), k):
            if subset_is_acyclic(d, s):
                out.append(frozenset(s))
    return out


def closure_acyclic(d: Digraph, mask: int) -> bool:
    """No vertex of ``mask`` reaches itself, by iterated reachability."""
    verts = [v for v in range(d.n) if mask >> v & 1]
    reach = {v: sum(1 << (w - 1) for w in range(1, d.n + 1) if (v + 1, w) in d.arcs) & mask for v in verts}
    for _ in range(len(verts)):
        for v in verts:
            extra = 0
            for u in verts:
                if reach[v] >> u & 1:
                    extra |= reach[u]
            reach[v] |= extra
    return not any(reach[v] >> v & 1 for v in verts)


def partition_chromatic(d: Digraph) -> int:
    """Fewest acyclic parts, by dynamic programming over vertex subsets."""
    n = d.n
    acyclic = [closure_acyclic(d, mask) for mask in range(1 << n)]
    best = [0] + [n + 1] * ((1 << n) - 1)
    for mask in range(1, 1 << n):
        low = mask & -mask
        sub = mask
        while sub:
            if sub & low and acyclic[sub]:
                best[mask] = min(best[mask], best[mask ^ sub] + 1)
            sub = (sub - 1) & mask
    return best[(1 << n) - 1]


def induced_cycles(d: Digraph) -> set[frozenset]:
    """Vertex sets whose induced sub-digraph is exactly one directed cycle (or a bidirected pair)."""
    out = set()
    for k in range(2, d.n + 1):
        for s in itertools.combinations(range(1, d.n + 1), k):
            arcs = [(u, v) for u, v in d.arcs if u in s and v in s]
            if len(arcs) != k:
                continue
            outs = {u for u, _ in arcs}
            ins = {v for _, v in arcs}
            if len(outs) != k or len(ins) != k:
                continue
            succ = dict(arcs)
            v, seen = s[0], set()
            while v not in seen:
                seen.add(v)
                v = succ[v]
            if len(seen) == k:
                out.add(frozenset(s))
    return out


def max_acyclic_size(d: Digraph) -> int:
    """n minus a minimum feedback vertex set, by brute force."""
    for k in range(d.n, -1, -1):
        for s in itertools.combinations(range(1, d.n + 1), k):
            if subset_is_acyclic(d, s):
                return k
    return 0


def gf2_rank(rows: list[int]) -> int:
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
    return len(basis)


def brute_minrank(free_rows: list[int]) -> int:
    """Minimum rank over every completion; ``free_rows[i]`` marks free columns of row ``i``."""
    n = len(free_rows)
    slots = [(i, j) for i in range(n) for j in range(n) if i != j and free_rows[i] >> j & 1]
    best = n
    for fill in range(1 << len(slots)):
        rows = [1 << i for i in range(n)]
        for k, (i, j) in enumerate(slots):
            if fill >> k & 1:
                rows[i] |= 1 << j
        best = min(best, gf2_rank(rows))
    return best


def as_fraction(x: float, limit: int = 1000) -> Fraction:
    return Fraction(x).limit_denominator(limit)
