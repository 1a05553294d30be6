"""Successive index coding (SIC) views of a conflict digraph.

Receiver ``j`` of the index coding instance knows ``W_i`` exactly when the
side-information digraph (the complement of the conflict digraph) has the
arc ``(i, j)``.  Scalar-linear codes over GF(2) serve as the linear
oracle: the broadcast length of the best such code is the minrank of the
side-information digraph.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .coloring import dichromatic_number, fractional_dichromatic
from .dof import classify_case, noncritical_arcs
from .enumeration import maximal_cliques, minimal_dicycles, weak_degeneracy
from .graphs import (
    DecodingOrder,
    Digraph,
    GraphError,
    SizeLimitError,
    bits,
    derived_views,
    is_chordal_bipartite,
    strong_components,
    topology_from_conflict,
)

__all__ = [
    "SicInstance",
    "Reduction",
    "ArcLabel",
    "HelpfulVerdict",
    "enhance_side_info",
    "minrank_gf2",
    "min_rank_free",
    "best_single_round_rate",
    "cover_bounds",
    "reduce_instance",
    "critical_arcs",
    "passing_is_helpful",
    "MINRANK_MAX_N",
]

MINRANK_MAX_N = 7
ORDERS_MAX_N = 5
COVER_MAX_N = 12


@dataclass(frozen=True)
class SicInstance:
    conflict: Digraph

    @property
    def side_info(self) -> Digraph:
        return derived_views(self.conflict)["complement"]


def _as_conflict(x) -> Digraph:
    return x.conflict if isinstance(x, SicInstance) else x


def enhance_side_info(inst: SicInstance | Digraph, order: DecodingOrder) -> Digraph:
    """Side information plus ``(i, j)`` for every ``i`` decoded before ``j``."""
    d = _as_conflict(inst)
    if len(order.order) != d.n:
        raise GraphError("decoding order length does not match the instance")
    side = derived_views(d)["complement"]
    seq = order.order
    extra = {(seq[a], seq[b]) for a in range(len(seq)) for b in range(a + 1, len(seq))}
    return side.with_arcs(extra)


# ---------------------------------------------------------------------------
# minrank


def _reduce(vec: int, basis: tuple[int, ...]) -> int:
    """Reduce ``vec`` against a basis kept with distinct leading bits."""
    for b in basis:
        if vec & (1 << (b.bit_length() - 1)):
            vec ^= b
    return vec


def _insert(basis: tuple[int, ...], vec: int) -> tuple[int, ...]:
    """Insert a reduced non-zero vector, returning a canonical (fully reduced) basis."""
    lead = 1 << (vec.bit_length() - 1)
    out = [b ^ vec if b & lead else b for b in basis]
    out.append(vec)
    return tuple(sorted(out, reverse=True))


def minrank_gf2(side_info: Digraph) -> int:
    """Minimum GF(2) rank of a matrix fitting the side-information pattern.

    Row ``i`` has a one on the diagonal, zeros at columns ``j`` that
    receiver ``i`` does not know, and free entries where ``(j, i)`` is an arc.
    The search picks one row at a time; a row already in the current span
    costs nothing and is always taken, otherwise each coset of the span is
    tried once.
    """
    n = side_info.n
    if n > MINRANK_MAX_N:
        raise SizeLimitError(f"minrank limited to n <= {MINRANK_MAX_N}, got {n}")
    return min_rank_free([side_info.pred[i] for i in range(1, n + 1)])


def min_rank_free(free_rows: list[int]) -> int:
    """Minimum GF(2) rank with unit diagonal and free entries at ``free_rows[i]`` (bit ``j`` = column ``j``)."""
    n = len(free_rows)
    if n == 0:
        return 0

    @lru_cache(maxsize=None)
    def solve(i: int, basis: tuple[int, ...]) -> int:
        if i == n:
            return 0
        diag = 1 << i
        seen = set()
        for sub in _submasks(free_rows[i] & ~diag):
            r = _reduce(diag | sub, basis)
            if r == 0:
                return solve(i + 1, basis)
            seen.add(r)
        return min(1 + solve(i + 1, _insert(basis, r)) for r in sorted(seen))

    return solve(0, ())


def _submasks(mask: int):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def best_single_round_rate(inst: SicInstance | Digraph) -> tuple[int, DecodingOrder]:
    """Smallest minrank over all decoding orders, with the first optimal order."""
    d = _as_conflict(inst)
    if d.n > ORDERS_MAX_N:
        raise SizeLimitError(f"order enumeration limited to n <= {ORDERS_MAX_N}, got {d.n}")
    best = None
    for perm in itertools.permutations(range(1, d.n + 1)):
        order = DecodingOrder(perm)
        r = minrank_gf2(enhance_side_info(d, order))
        if best is None or r < best[0]:
            best = (r, order)
            if r == 1:
                break
    return best


# ---------------------------------------------------------------------------
# covering bounds


def _cycle_cover(d: Digraph) -> Fraction:
    cycles = [sum(1 << (v - 1) for v in c) for c in minimal_dicycles(d)]
    best = None

    def search(k: int, used: int, value: Fraction) -> None:
        nonlocal best
        rest = d.full_mask & ~used
        if d.is_acyclic_mask(rest):
            total = value + (1 if rest else 0)
            if best is None or total < best:
                best = total
        for j in range(k, len(cycles)):
            c = cycles[j]
            if not c & used:
                size = c.bit_count()
                search(j + 1, used | c, value + Fraction(size, size - 1))

    search(0, 0, Fraction(0))
    return best


def _degenerate_cover(d: Digraph) -> int:
    n = d.n
    full = d.full_mask
    cost = [0] * (1 << n)
    for S in range(1, 1 << n):
        cost[S] = weak_degeneracy(d, S) + 1
    f = [0] * (1 << n)
    for mask in range(1, full + 1):
        low = mask & -mask
        rest = mask ^ low
        best = cost[mask]
        sub = rest
        while sub:
            part = sub | low
            cand = cost[part] + f[mask ^ part]
            if cand < best:
                best = cand
            sub = (sub - 1) & rest
        f[mask] = best
    return f[full]


def cover_bounds(inst: SicInstance | Digraph) -> dict[str, Fraction]:
    """Achievable broadcast rates from acyclic, cycle and weakly degenerate covers.

    ``clique_cover`` is the dichromatic number; ``cycle_cover`` time-shares
    vertex-disjoint chordless dicycles (``|C|/(|C|-1)`` each) and charges an
    acyclic remainder one unit; ``weakly_degenerate_cover`` is the least
    ``sum(m_i + 1)`` over partitions into weakly ``m_i``-degenerate parts.
    """
    d = _as_conflict(inst)
    if d.n > COVER_MAX_N:
        raise SizeLimitError(f"cover bounds limited to n <= {COVER_MAX_N}, got {d.n}")
    if d.n == 0:
        z = Fraction(0)
        return {"clique_cover": z, "cycle_cover": z, "weakly_degenerate_cover": z}
    return {
        "clique_cover": Fraction(dichromatic_number(d)[0]),
        "cycle_cover": _cycle_cover(d),
        "weakly_degenerate_cover": Fraction(_degenerate_cover(d)),
    }


# ---------------------------------------------------------------------------
# reducibility and criticality


@dataclass(frozen=True)
class Reduction:
    reduced: Digraph
    kept: tuple[int, ...]
    reducible_vertices: frozenset[int]
    certified: bool
    rate: Fraction
    case: str

    def to_json(self) -> dict:
        from .lp import format_rational

        return {
            "reduced": self.reduced.to_json(),
            "kept_vertices": list(self.kept),
            "reducible_vertices": sorted(self.reducible_vertices),
            "certified": self.certified,
            "rate": format_rational(self.rate),
            "case": self.case,
        }


def reduce_instance(inst: SicInstance | Digraph) -> Reduction:
    """Keep the strong component with the largest fractional dichromatic number.

    The other vertices are certified reducible when that component falls in
    Case I, II or III; the reduced instance is relabeled to ``1..k`` and
    ``kept`` lists the original labels.
    """
    d = _as_conflict(inst)
    best = None
    for comp in strong_components(d):
        sub, labels = d.induced(comp)
        value, _ = fractional_dichromatic(sub)
        if best is None or value > best[0]:
            best = (value, sub, labels)
    value, sub, labels = best
    verdict = classify_case(sub)
    removed = frozenset(d.vertices) - frozenset(labels)
    return Reduction(sub, tuple(labels), removed, verdict.certified, value, verdict.case)


@dataclass(frozen=True)
class ArcLabel:
    label: str  # critical | noncritical | unknown
    certificate: str = ""


def critical_arcs(d: Digraph) -> dict[tuple[int, int], ArcLabel]:
    """Three-valued criticality label for every arc."""
    labels = {a: ArcLabel("unknown") for a in d.sorted_arcs()}
    for a in noncritical_arcs(d):
        labels[a] = ArcLabel("noncritical", "arc lies on no chordless dicycle")
    verdict = classify_case(d)
    cycles = minimal_dicycles(d).members
    if verdict.case == "II" and cycles:
        shortest = min(len(c) for c in cycles)
        tops = [c for c in cycles if len(c) == shortest]
        if len(tops) == 1:
            c = tops[0]
            arcs = {(c[0], c[1]), (c[1], c[0])} if len(c) == 2 else {(c[i], c[(i + 1) % len(c)]) for i in range(len(c))}
            for a in arcs:
                labels[a] = ArcLabel("critical", f"unique shortest chordless dicycle {list(c)}, ideal dicycle matrix")
    if verdict.case == "I":
        cliques = maximal_cliques(d).members
        largest = max(len(q) for q in cliques)
        tops = [q for q in cliques if len(q) == largest]
        if len(tops) == 1 and largest >= 2:
            q = tops[0]
            for u, v in itertools.permutations(q, 2):
                labels[(u, v)] = ArcLabel("critical", f"unique maximum clique {list(q)} of a perfect digraph")
    return labels


# ---------------------------------------------------------------------------
# helpfulness of a single passing


@dataclass(frozen=True)
class HelpfulVerdict:
    """``helpful`` is True, False or None (unknown)."""

    helpful: bool | None
    witness: tuple[int, ...] | None
    chordal_bipartite: bool
    rate_before: Fraction | None = None
    rate_after: Fraction | None = None
    region_before: tuple[tuple[int, ...], ...] = field(default_factory=tuple)
    region_after: tuple[tuple[int, ...], ...] = field(default_factory=tuple)

    def to_json(self) -> dict:
        from .lp import format_rational

        return {
            "helpful": self.helpful,
            "witness": list(self.witness) if self.witness else None,
            "chordal_bipartite": self.chordal_bipartite,
            "dsym_before": format_rational(self.rate_before) if self.rate_before is not None else None,
            "dsym_after": format_rational(self.rate_after) if self.rate_after is not None else None,
            "region_before": [list(q) for q in self.region_before],
            "region_after": [list(q) for q in self.region_after],
        }


def _underlying_cliques(d: Digraph) -> tuple[tuple[int, ...], ...]:
    und = derived_views(d)["underlying"]
    both = Digraph(d.n, frozenset(und.edges) | frozenset((v, u) for u, v in und.edges))
    return tuple(q for q in maximal_cliques(both).members if len(q) >= 2)


def _contains_arc(cycle: tuple[int, ...], arc: tuple[int, int]) -> bool:
    k = len(cycle)
    if k == 2:
        return set(cycle) == set(arc)
    return any((cycle[i], cycle[(i + 1) % k]) == arc for i in range(k))


def passing_is_helpful(d: Digraph, arc: tuple[int, int]) -> HelpfulVerdict:
    """Does passing ``W_i`` to receiver ``j`` (cancelling conflict arc ``(i, j)``) help?

    Helpful when adding ``(i, j)`` to the side-information digraph closes a
    new chordless dicycle.  If no dicycle forms and the network is chordal
    bipartite the answer is a definite no; otherwise it is unknown.  The
    scalar-linear symmetric rate ``1 / minrank`` and the maximal cliques of
    the underlying conflict graph are reported before and after.
    """
    arc = (int(arc[0]), int(arc[1]))
    if arc not in d.arcs:
        raise GraphError(f"arc {arc} is not in the conflict digraph")
    side = derived_views(d)["complement"]
    after = side.with_arcs({arc})
    witness = next((c for c in minimal_dicycles(after) if _contains_arc(c, arc)), None)
    chordal = is_chordal_bipartite(topology_from_conflict(d))
    if witness is not None:
        helpful = True
    elif chordal:
        helpful = False
    else:
        helpful = None
    before_rate = after_rate = None
    if d.n <= MINRANK_MAX_N:
        before_rate = Fraction(1, minrank_gf2(side))
        after_rate = Fraction(1, minrank_gf2(after))
    reduced = d.without_arcs({arc})
    return HelpfulVerdict(
        helpful, witness, chordal, before_rate, after_rate,
        _underlying_cliques(d), _underlying_cliques(reduced),
    )
