"""Acyclic-set coloring: integer, fractional and local dichromatic numbers.

Solutions can be turned into time-sharing schedules, and a schedule can be
replayed by :func:`simulate_schedule`, which checks slot by slot that every
scheduled receiver decodes once the messages preceding it are passed on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .enumeration import ENUMERATION_MAX_N, acyclic_sets, maximal_acyclic_sets, maximal_cliques
from .graphs import Digraph, SizeLimitError, acyclic_order, bits
from .lp import format_rational, maximize_packing

__all__ = [
    "ColoringSolution",
    "Schedule",
    "SimulationResult",
    "dichromatic_number",
    "fractional_dichromatic",
    "local_fractional_dichromatic",
    "exact_cover_solution",
    "extract_schedule",
    "simulate_schedule",
    "LOCAL_MAX_N",
]

LOCAL_MAX_N = 12


@dataclass(frozen=True)
class ColoringSolution:
    """Weighted family of acyclic sets; ``value`` is the total weight."""

    sets: tuple[tuple[int, ...], ...]
    weights: tuple[Fraction, ...]
    value: Fraction

    def coverage(self) -> dict[int, Fraction]:
        cov: dict[int, Fraction] = {}
        for s, w in zip(self.sets, self.weights):
            for v in s:
                cov[v] = cov.get(v, Fraction(0)) + w
        return cov

    def to_json(self) -> dict:
        return {
            "sets": [list(s) for s in self.sets],
            "weights": [format_rational(w) for w in self.weights],
            "value": format_rational(self.value),
        }


@dataclass(frozen=True)
class Schedule:
    """Slots of (acyclic set, decoding order), repeated with period ``T``."""

    slots: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    T: int
    slot_counts: dict[int, int] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "T": self.T,
            "slots": [{"set": list(s), "order": list(o)} for s, o in self.slots],
            "slot_counts": {str(v): c for v, c in sorted(self.slot_counts.items())},
        }


@dataclass(frozen=True)
class SimulationResult:
    ok: bool
    rates: dict[int, Fraction]
    failed_slot: int | None = None
    reason: str | None = None


def _check_size(d: Digraph, limit: int) -> None:
    if d.n > limit:
        raise SizeLimitError(f"coloring limited to n <= {limit}, got {d.n}")


# ---------------------------------------------------------------------------
# integer


def _colorable(d: Digraph, k: int, order: list[int]) -> list[int] | None:
    """Partition into at most ``k`` acyclic classes by backtracking."""
    classes = [0] * k
    n = len(order)

    def place(i: int, used: int) -> bool:
        if i == n:
            return True
        v = order[i]
        bit = 1 << (v - 1)
        for c in range(used):
            trial = classes[c] | bit
            if d.is_acyclic_mask(trial):
                classes[c] = trial
                if place(i + 1, used):
                    return True
                classes[c] &= ~bit
        if used < k:
            classes[used] = bit
            if place(i + 1, used + 1):
                return True
            classes[used] = 0
        return False

    return [c for c in classes if c] if place(0, 0) else None


def dichromatic_number(d: Digraph) -> tuple[int, ColoringSolution]:
    """Minimum number of acyclic sets partitioning the vertices.

    Returns
    -------
    k : int
    solution : ColoringSolution
        A witness partition with unit weights.
    """
    _check_size(d, ENUMERATION_MAX_N)
    if d.n == 0:
        return 0, ColoringSolution((), (), Fraction(0))
    lower = max(len(c) for c in maximal_cliques(d))
    # high-degree vertices first makes conflicts surface early
    order = sorted(d.vertices, key=lambda v: (-(d.in_degree(v) + d.out_degree(v)), v))
    for k in range(lower, d.n + 1):
        found = _colorable(d, k, order)
        if found is not None:
            sets = tuple(sorted(tuple(bits(c)) for c in found))
            return k, ColoringSolution(sets, tuple(Fraction(1) for _ in sets), Fraction(k))
    raise AssertionError("singletons always give a coloring")


# ---------------------------------------------------------------------------
# fractional


def fractional_dichromatic(d: Digraph) -> tuple[Fraction, ColoringSolution]:
    """Exact fractional dichromatic number over maximal acyclic sets.

    The covering LP ``min sum g_A`` subject to every vertex receiving weight
    at least one is solved through its packing dual; the dual multipliers
    are the optimal weights ``g_A``.

    Examples
    --------
    >>> from timmp.graphs import Digraph
    >>> c3 = Digraph(3, frozenset({(1, 2), (2, 3), (3, 1)}))
    >>> fractional_dichromatic(c3)[0]
    Fraction(3, 2)
    """
    _check_size(d, ENUMERATION_MAX_N)
    if d.n == 0:
        return Fraction(0), ColoringSolution((), (), Fraction(0))
    family = maximal_acyclic_sets(d).members
    A = [[1 if v in s else 0 for v in d.vertices] for s in family]
    res = maximize_packing([1] * d.n, A, [1] * len(family))
    chosen = [(s, g) for s, g in zip(family, res.duals) if g]
    sol = ColoringSolution(tuple(s for s, _ in chosen), tuple(g for _, g in chosen), res.value)
    return res.value, sol


def local_fractional_dichromatic(d: Digraph) -> Fraction:
    """Fractional local dichromatic number.

    Minimizes, over fractional acyclic-set covers, the largest total weight
    of sets meeting a closed in-neighbourhood.  Solved exactly through the
    packing dual with variables ``y_v`` (covering rows) and ``w_v``
    (neighbourhood rows).
    """
    _check_size(d, LOCAL_MAX_N)
    if d.n == 0:
        return Fraction(0)
    n = d.n
    family = [sum(1 << (v - 1) for v in s) for s in acyclic_sets(d, LOCAL_MAX_N)]
    closed_in = [d.pred[v] | 1 << (v - 1) for v in d.vertices]
    rows = [[0] * n + [1] * n]
    for S in family:
        y = [1 if S >> (v - 1) & 1 else 0 for v in d.vertices]
        w = [-1 if S & closed_in[v - 1] else 0 for v in d.vertices]
        rows.append(y + w)
    res = maximize_packing([1] * n + [0] * n, rows, [1] + [0] * len(family))
    return res.value


# ---------------------------------------------------------------------------
# schedules


def exact_cover_solution(sol: ColoringSolution) -> ColoringSolution:
    """Shrink sets so every covered vertex receives total weight exactly one.

    Subsets of acyclic sets stay acyclic and the total weight is unchanged,
    so time sharing over the result gives every message the same rate.
    """
    pieces: dict[tuple[int, ...], Fraction] = {}
    for s, w in zip(sol.sets, sol.weights):
        if w:
            pieces[s] = pieces.get(s, Fraction(0)) + w
    while True:
        cov: dict[int, Fraction] = {}
        for s, w in pieces.items():
            for v in s:
                cov[v] = cov.get(v, Fraction(0)) + w
        over = sorted(v for v, c in cov.items() if c > 1)
        if not over:
            break
        v = over[0]
        excess = cov[v] - 1
        for s in sorted(pieces):
            if v in s and excess:
                take = min(pieces[s], excess)
                pieces[s] -= take
                if not pieces[s]:
                    del pieces[s]
                smaller = tuple(u for u in s if u != v)
                if smaller:
                    pieces[smaller] = pieces.get(smaller, Fraction(0)) + take
                excess -= take
    items = sorted(pieces.items())
    return ColoringSolution(
        tuple(s for s, _ in items), tuple(w for _, w in items), sum((w for _, w in items), Fraction(0))
    )


def _topological(d: Digraph, s: tuple[int, ...]) -> tuple[int, ...]:
    sub, labels = d.induced(s)
    order, cycle = acyclic_order(sub)
    if order is None:
        raise ValueError(f"set {s} is not acyclic")
    return tuple(labels[v - 1] for v in order)


def extract_schedule(d: Digraph, sol: ColoringSolution, exact: bool = True) -> Schedule:
    """Time-sharing schedule realizing ``sol``.

    Each set ``A`` gets ``g(A) * L`` slots, ``L`` being the lcm of the weight
    denominators; the period is the total number of slots.  With
    ``exact=True`` the solution is first passed through
    :func:`exact_cover_solution` so every message gets the same rate.
    """
    if exact:
        sol = exact_cover_solution(sol)
    L = 1
    for w in sol.weights:
        L = math.lcm(L, Fraction(w).denominator)
    slots = []
    counts = {v: 0 for v in d.vertices}
    for s, w in sorted(zip(sol.sets, sol.weights)):
        reps = int(Fraction(w) * L)
        order = _topological(d, s)
        for _ in range(reps):
            slots.append((tuple(s), order))
            for v in s:
                counts[v] += 1
    return Schedule(tuple(slots), len(slots), counts)


def simulate_schedule(d: Digraph, s: Schedule) -> SimulationResult:
    """Noiseless replay of a schedule with decoded-message passing.

    In a slot only the scheduled transmitters are active.  Receivers are
    visited in the slot's order; a receiver decodes when every active
    interferer has been decoded earlier in that slot, and its message is
    then passed on.
    """
    decoded = {v: 0 for v in d.vertices}
    T = s.T
    for k, (members, order) in enumerate(s.slots):
        mset = set(members)
        if sorted(order) != sorted(mset) or len(mset) != len(members):
            return SimulationResult(False, {}, k, "decoding order is not a permutation of the slot's set")
        if not d.is_acyclic(mset):
            return SimulationResult(False, {}, k, f"set {sorted(mset)} induces a directed cycle")
        done: set[int] = set()
        for v in order:
            interferers = {u for u in bits(d.pred[v]) if u in mset}
            if not interferers <= done:
                missing = sorted(interferers - done)
                return SimulationResult(
                    False, {}, k, f"receiver {v} decoded before interfering messages {missing}"
                )
            done.add(v)
            decoded[v] += 1
    rates = {v: Fraction(c, T) if T else Fraction(0) for v, c in decoded.items()}
    return SimulationResult(True, rates)
