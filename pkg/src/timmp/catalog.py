"""Named conflict digraphs and topologies used in examples and tests.

Example digraphs are reconstructions from textual descriptions of
worked examples; each one is checked against its described properties in
the test suite.
"""

from __future__ import annotations

from .graphs import BipartiteTopology, Digraph

__all__ = [
    "directed_cycle",
    "bidirected_complete",
    "bidirected_cycle",
    "c52_digraph",
    "j_digraph",
    "j3_digraph",
    "c53_digraph",
    "pentagram_digraph",
    "pendant_triangle_digraph",
    "twin_triangles_digraph",
    "triangle_chain_digraph",
    "triangle_ring_digraph",
    "mixed_triangles_digraph",
    "prism_digraph",
    "clique_feeder_digraph",
    "pair_feeder_digraph",
    "chordal_topology",
    "NAMED",
]


def _bi(pairs):
    out = set()
    for u, v in pairs:
        out.add((u, v))
        out.add((v, u))
    return out


def directed_cycle(K: int) -> Digraph:
    """``1 -> 2 -> ... -> K -> 1``; ``K = 2`` gives a bidirected pair."""
    return Digraph(K, frozenset((i, i % K + 1) for i in range(1, K + 1)))


def bidirected_complete(n: int) -> Digraph:
    return Digraph(n, frozenset((u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v))


def bidirected_cycle(n: int) -> Digraph:
    return Digraph(n, frozenset(_bi((i, i % n + 1) for i in range(1, n + 1))))


def c52_digraph() -> Digraph:
    """Dicycle-vertex incidence matrix equal to circulant(5, 2)."""
    return bidirected_cycle(5)


def j_digraph(n: int) -> Digraph:
    """Hub ``n + 1`` bidirected to ``1..n`` plus the directed cycle on ``1..n``.

    Its chordless dicycles form the degenerate projective plane ``j_n``.
    """
    hub = n + 1
    arcs = _bi((hub, i) for i in range(1, n + 1)) | {(i, i % n + 1) for i in range(1, n + 1)}
    return Digraph(n + 1, frozenset(arcs))


def j3_digraph() -> Digraph:
    return j_digraph(3)


def c53_digraph() -> Digraph:
    """Arcs ``i -> i+1`` and ``i -> i+3`` (mod 5): chordless triangles ``{i, i+1, i+2}``."""
    arcs = {(i, (i % 5) + 1) for i in range(1, 6)} | {(i, (i + 2) % 5 + 1) for i in range(1, 6)}
    return Digraph(5, frozenset(arcs))


def pentagram_digraph() -> Digraph:
    """Bidirected 5-cycle plus the pentagram ``1->3->5->2->4->1``."""
    star = {(1, 3), (3, 5), (5, 2), (2, 4), (4, 1)}
    return Digraph(5, frozenset(_bi((i, i % 5 + 1) for i in range(1, 6)) | star))


def pendant_triangle_digraph() -> Digraph:
    """Perfect digraph: bidirected triangle ``{2,4,6}`` with pendant one-way arcs."""
    arcs = _bi([(2, 4), (4, 6), (2, 6)]) | {(1, 2), (6, 1), (3, 4), (2, 3), (5, 6), (4, 5)}
    return Digraph(6, frozenset(arcs))


def twin_triangles_digraph() -> Digraph:
    """Two chordless triangles ``{1,2,3}`` and ``{1,3,4}`` sharing arc ``3 -> 1``."""
    return Digraph(4, frozenset({(1, 2), (2, 3), (3, 1), (1, 4), (4, 3)}))


def triangle_chain_digraph() -> Digraph:
    arcs = {(1, 2), (2, 3), (3, 1), (3, 4), (4, 5), (5, 3), (4, 6), (6, 2)}
    return Digraph(6, frozenset(arcs))


def triangle_ring_digraph() -> Digraph:
    """Triangle chain with arc ``2 -> 4``: dicycles ``{1,2,3}``, ``{3,4,5}``, ``{2,4,6}``."""
    return triangle_chain_digraph().with_arcs({(2, 4)})


def mixed_triangles_digraph() -> Digraph:
    """Bidirected triangle ``{1,2,3}`` and directed triangle ``3 -> 4 -> 5 -> 3``."""
    arcs = _bi([(1, 2), (2, 3), (1, 3)]) | {(3, 4), (4, 5), (5, 3)}
    return Digraph(5, frozenset(arcs))


def prism_digraph() -> Digraph:
    """Directed triangle ``{1,2,3}``, bidirected triangle ``{4,5,6}``, pairs 1-5, 2-6, 3-4."""
    arcs = {(1, 2), (2, 3), (3, 1)} | _bi([(4, 5), (5, 6), (4, 6), (1, 5), (2, 6), (3, 4)])
    return Digraph(6, frozenset(arcs))


def clique_feeder_digraph() -> Digraph:
    """Bidirected ``K_4`` on ``1..4`` feeding a directed triangle on ``5, 6, 7``."""
    arcs = {(u, v) for u in range(1, 5) for v in range(1, 5) if u != v}
    arcs |= {(5, 6), (6, 7), (7, 5), (4, 5)}
    return Digraph(7, frozenset(arcs))


def pair_feeder_digraph() -> Digraph:
    """Bidirected pair ``{1,2}`` feeding a directed triangle on ``3, 4, 5``."""
    return Digraph(5, frozenset(_bi([(1, 2)]) | {(3, 4), (4, 5), (5, 3), (2, 3)}))


def chordal_topology() -> BipartiteTopology:
    """Three-user chordal bipartite network with conflict arcs 1->2, 1->3, 3->1, 2->3."""
    return BipartiteTopology(3, {1: {1, 3}, 2: {1, 2}, 3: {1, 2, 3}})


NAMED = {
    "c52": c52_digraph,
    "j3": j3_digraph,
    "j4": lambda: j_digraph(4),
    "c53": c53_digraph,
    "pentagram": pentagram_digraph,
    "pendant-triangle": pendant_triangle_digraph,
    "twin-triangles": twin_triangles_digraph,
    "triangle-chain": triangle_chain_digraph,
    "triangle-ring": triangle_ring_digraph,
    "mixed-triangles": mixed_triangles_digraph,
    "prism": prism_digraph,
    "clique-feeder": clique_feeder_digraph,
    "pair-feeder": pair_feeder_digraph,
}
