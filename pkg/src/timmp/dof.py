"""Clique-cycle outer bounds, case classification and DoF-region certificates.

The outer bound keeps ``0 <= d_k <= 1``, one packing inequality per maximal
clique of the symmetric part (size two or more) and one inequality
``sum_{k in C} d_k <= |C| - 1`` per chordless dicycle of length three or
more; a bidirected pair is a clique and a 2-dicycle at once and is counted
once.  When the polytope is integral every extreme point has acyclic
support, so orthogonal access achieves the whole region.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .coloring import exact_cover_solution, fractional_dichromatic
from .enumeration import maximal_cliques, minimal_dicycles
from .graphs import Digraph, UndirectedGraph, canonical_form, derived_views, is_perfect_graph, strong_components
from .lp import format_rational
from .polyhedra import (
    MatrixVerdict,
    RationalPolytope,
    enumerate_vertices,
    find_mni_submatrix,
    incidence_matrix,
    is_ideal,
    is_perfect_matrix,
)

__all__ = [
    "CaseVerdict",
    "DoFRegion",
    "SymmetricDoF",
    "outer_bound_polytope",
    "outer_symmetric",
    "classify_case",
    "dof_region",
    "symmetric_dof",
    "noncritical_arcs",
    "strip_noncritical",
    "special_instance",
    "time_sharing_certificate",
]


@dataclass(frozen=True)
class CaseVerdict:
    """``case`` is ``I``, ``II``, ``III``, ``special:c52``, ``special:j3`` or ``undecided``."""

    case: str
    evidence: dict = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        return self.case in ("I", "II", "III")

    def to_json(self) -> dict:
        ev = {}
        for k, v in self.evidence.items():
            ev[k] = v.to_json() if isinstance(v, MatrixVerdict) else v
        return {"case": self.case, "evidence": ev}


@dataclass(frozen=True)
class DoFRegion:
    polytope: RationalPolytope
    case: CaseVerdict
    extreme_points: tuple[tuple[Fraction, ...], ...]
    achievable_points: tuple[bool, ...]
    certified: bool
    inner_symmetric: Fraction

    def to_json(self) -> dict:
        return {
            "case": self.case.to_json(),
            "certified": self.certified,
            "inequalities": [
                {"coeffs": [format_rational(c) for c in a], "sense": s, "rhs": format_rational(b)}
                for a, s, b in self.polytope.inequalities
            ],
            "extreme_points": [[format_rational(x) for x in p] for p in self.extreme_points],
            "achievable": list(self.achievable_points),
            "inner_symmetric": format_rational(self.inner_symmetric),
        }


@dataclass(frozen=True)
class SymmetricDoF:
    achievable: Fraction
    outer: Fraction
    status: str
    reduced: Digraph | None = None
    note: str = ""

    def to_json(self) -> dict:
        out = {
            "achievable": format_rational(self.achievable),
            "outer": format_rational(self.outer),
            "status": self.status,
        }
        if self.note:
            out["note"] = self.note
        return out


# ---------------------------------------------------------------------------
# outer bound


def _constraints(d: Digraph) -> list[tuple[tuple[int, ...], int]]:
    """(support, rhs) pairs of the non-trivial outer-bound inequalities."""
    rows = []
    for q in maximal_cliques(d):
        if len(q) >= 2:
            rows.append((tuple(q), 1))
    for c in minimal_dicycles(d):
        if len(c) >= 3:
            rows.append((tuple(sorted(c)), len(c) - 1))
    return rows


def outer_bound_polytope(d: Digraph) -> RationalPolytope:
    """Clique-cycle outer bound on the DoF region.

    Examples
    --------
    >>> from timmp.catalog import directed_cycle
    >>> p = outer_bound_polytope(directed_cycle(3))
    >>> [(a, s, str(b)) for a, s, b in p.inequalities if sum(a) > 1]
    [((Fraction(1, 1), Fraction(1, 1), Fraction(1, 1)), '<=', '2')]
    """
    n = d.n
    rows = []
    for k in range(n):
        e = [0] * n
        e[k] = 1
        rows.append((tuple(e), ">=", 0))
        rows.append((tuple(e), "<=", 1))
    for support, rhs in _constraints(d):
        a = [0] * n
        for v in support:
            a[v - 1] = 1
        rows.append((tuple(a), "<=", rhs))
    return RationalPolytope.from_rows(n, rows)


def outer_symmetric(d: Digraph) -> Fraction:
    """Largest ``t`` with ``(t, ..., t)`` in the outer bound."""
    if d.n == 0:
        return Fraction(0)
    return min([Fraction(1)] + [Fraction(rhs, len(s)) for s, rhs in _constraints(d)])


# ---------------------------------------------------------------------------
# classification


@lru_cache(maxsize=None)
def _special_forms() -> dict[str, str]:
    from .catalog import c52_digraph, j3_digraph

    return {canonical_form(c52_digraph())[0]: "c52", canonical_form(j3_digraph())[0]: "j3"}


def special_instance(d: Digraph) -> str | None:
    """``"c52"`` or ``"j3"`` when ``d`` is isomorphic to one of those digraphs."""
    if d.n not in (4, 5):
        return None
    return _special_forms().get(canonical_form(d)[0])


def _integral(poly: RationalPolytope) -> tuple[bool, list]:
    pts = enumerate_vertices(poly)
    frac = [p for p in pts if any(x.denominator != 1 for x in p)]
    return not frac, frac


def classify_case(d: Digraph) -> CaseVerdict:
    """Place ``d`` into Case I, II or III, a special instance, or ``undecided``."""
    cliques = maximal_cliques(d).members
    cycles = minimal_dicycles(d).members
    long_cycles = [c for c in cycles if len(c) >= 3]
    big_cliques = [q for q in cliques if len(q) >= 3]
    sym = derived_views(d)["symmetric_part"]
    evidence: dict = {
        "max_clique": max((len(q) for q in cliques), default=0),
        "long_dicycles": [list(c) for c in long_cycles],
    }

    if not long_cycles:
        a = is_perfect_matrix(incidence_matrix(cliques, d.n))
        evidence["clique_matrix_perfect"] = a
        if a.result:
            return CaseVerdict("I", evidence)

    if not big_cliques:
        b = is_ideal(incidence_matrix(cycles, d.n))
        evidence["dicycle_matrix_ideal"] = b
        if b.result:
            return CaseVerdict("II", evidence)

    if is_perfect_graph(sym):
        evidence["symmetric_part_perfect"] = True
        covered = {v for q in big_cliques for v in q}
        keep = [v for v in d.vertices if v not in covered]
        sub, labels = d.induced(keep)
        sub_cycles = minimal_dicycles(sub).members
        bprime = incidence_matrix(sub_cycles, sub.n)
        hit = find_mni_submatrix(bprime) if sub_cycles else None
        evidence["b_prime_rows"] = [[labels[v - 1] for v in c] for c in sub_cycles]
        # 2-dicycles inside a big clique are dominated by that clique's inequality
        active = [c for c in cycles if not any(set(c) <= set(q) for q in big_cliques)]
        overlap_ok = all(len(set(c) & set(q)) <= 1 for c in active for q in big_cliques)
        evidence["cycle_clique_overlap_ok"] = overlap_ok
        if hit is not None:
            name, rs, cs = hit
            evidence["b_prime_mni"] = {"name": name, "rows": rs, "cols": [labels[j] for j in cs]}
        elif overlap_ok:
            ok, frac = _integral(outer_bound_polytope(d))
            evidence["outer_polytope_integral"] = ok
            if ok:
                return CaseVerdict("III", evidence)
            evidence["fractional_vertex"] = [str(x) for x in frac[0]]
    else:
        evidence["symmetric_part_perfect"] = False

    special = special_instance(d)
    if special:
        return CaseVerdict(f"special:{special}", evidence)
    return CaseVerdict("undecided", evidence)


# ---------------------------------------------------------------------------
# regions


def dof_region(d: Digraph, verdict: CaseVerdict | None = None) -> DoFRegion:
    """Outer bound with its extreme points and an achievability check per point.

    The region is certified when the instance falls in Case I, II or III and
    every extreme point is a 0/1 vector with acyclic support.  Otherwise the
    outer polytope is reported alongside the orthogonal-access inner bound.
    """
    verdict = verdict or classify_case(d)
    poly = outer_bound_polytope(d)
    pts = enumerate_vertices(poly)
    achievable = []
    for p in pts:
        if all(x in (0, 1) for x in p):
            achievable.append(d.is_acyclic([k + 1 for k, x in enumerate(p) if x == 1]))
        else:
            achievable.append(False)
    value, _ = fractional_dichromatic(d)
    inner = 1 / value if value else Fraction(1)
    certified = verdict.certified and all(achievable)
    return DoFRegion(poly, verdict, tuple(pts), tuple(achievable), certified, inner)


def time_sharing_certificate(d: Digraph) -> list[tuple[tuple[int, ...], Fraction]]:
    """Convex combination of acyclic-set indicator vectors equal to ``(1/chi, ..., 1/chi)``.

    Each entry is ``(acyclic set, coefficient)``; coefficients sum to one.
    """
    value, sol = fractional_dichromatic(d)
    exact = exact_cover_solution(sol)
    return [(s, w / value) for s, w in zip(exact.sets, exact.weights)]


# ---------------------------------------------------------------------------
# symmetric DoF


def noncritical_arcs(d: Digraph) -> set[tuple[int, int]]:
    """Arcs lying on no chordless dicycle."""
    on_cycle = set()
    for c in minimal_dicycles(d):
        k = len(c)
        if k == 2:
            on_cycle.update({(c[0], c[1]), (c[1], c[0])})
        else:
            on_cycle.update((c[i], c[(i + 1) % k]) for i in range(k))
    return set(d.arcs) - on_cycle


def strip_noncritical(d: Digraph) -> Digraph:
    """Remove arcs on no chordless dicycle until none remain."""
    while True:
        extra = noncritical_arcs(d)
        if not extra:
            return d
        d = d.without_arcs(extra)


def symmetric_dof(d: Digraph) -> SymmetricDoF:
    """Orthogonal-access symmetric DoF against the clique-cycle outer bound.

    ``optimal`` when the two meet.  Otherwise the strong component with the
    largest fractional dichromatic number is taken, arcs on no chordless
    dicycle are removed, and the status is ``linear_optimal`` when the
    result is one of the special instances with known linear optimum.
    Anything else is a ``gap``.
    """
    value, _ = fractional_dichromatic(d)
    achievable = 1 / value if value else Fraction(1)
    outer = outer_symmetric(d)
    if achievable == outer:
        return SymmetricDoF(achievable, outer, "optimal")
    best = None
    for comp in strong_components(d):
        sub, _ = d.induced(comp)
        v, _ = fractional_dichromatic(sub)
        if best is None or v > best[0]:
            best = (v, sub)
    reduced = strip_noncritical(best[1])
    if 1 / fractional_dichromatic(reduced)[0] == outer_symmetric(reduced) and reduced.n < d.n:
        return SymmetricDoF(achievable, outer, "optimal", reduced, "reduced instance meets its outer bound")
    special = special_instance(reduced)
    if special:
        return SymmetricDoF(achievable, outer, "linear_optimal", reduced, f"reduces to {special}")
    return SymmetricDoF(achievable, outer, "gap", reduced)
