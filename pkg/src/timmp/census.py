"""Census of non-isomorphic conflict digraphs with per-instance DoF analysis.

Isomorphism classes are found by computing, for every labeled digraph, the
smallest adjacency code over all relabelings (vectorized with numpy over
the whole code space).  Each representative is analysed independently, so
records can be computed in parallel and are written sorted by id.
"""

from __future__ import annotations

import csv
import itertools
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, replace
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .coloring import dichromatic_number, fractional_dichromatic
from .dof import classify_case, strip_noncritical, symmetric_dof
from .enumeration import minimal_dicycles
from .graphs import (
    Digraph,
    SizeLimitError,
    canonical_form,
    derived_views,
    digraph_from_code,
    is_perfect_graph,
    pair_index,
    strong_components,
)
from .lp import format_rational

__all__ = [
    "CensusRecord",
    "canonical_codes",
    "generate_census",
    "analyze_instance",
    "run_census",
    "reduction_pipeline",
    "linear_upper_bounds",
    "is_perfect_digraph",
    "write_report",
    "summary_line",
    "cache_dir",
    "CENSUS_MAX_N",
]

CENSUS_MAX_N = 5

CSV_FIELDS = [
    "id", "n", "arcs", "case", "chi_A", "chi_Af",
    "dsym_achievable", "dsym_outer", "status", "reduction_target",
]


@dataclass(frozen=True)
class CensusRecord:
    id: str
    n: int
    arcs: int
    case: str
    chi_A: int
    chi_Af: str
    dsym_achievable: str
    dsym_outer: str
    status: str
    reduction_target: str

    def to_row(self) -> dict:
        return asdict(self)


def canonical_codes(n: int) -> np.ndarray:
    """Canonical code of every labeled digraph on ``n`` vertices.

    Entry ``c`` holds the minimum, over all vertex permutations, of the
    permuted adjacency code of the digraph with code ``c``.
    """
    if not 1 <= n <= CENSUS_MAX_N:
        raise SizeLimitError(f"census limited to 1 <= n <= {CENSUS_MAX_N}, got {n}")
    idx = pair_index(n)
    pairs = sorted(idx, key=idx.get)
    total = len(pairs)
    codes = np.arange(1 << total, dtype=np.uint32)
    bitplanes = [((codes >> np.uint32(total - 1 - k)) & np.uint32(1)) for k in range(total)]
    best = codes.copy()
    for perm in itertools.permutations(range(1, n + 1)):
        permuted = np.zeros_like(codes)
        for k, (u, v) in enumerate(pairs):
            target = idx[(perm[u - 1], perm[v - 1])]
            permuted |= bitplanes[k] << np.uint32(total - 1 - target)
        np.minimum(best, permuted, out=best)
    return best


def _representatives(best: np.ndarray) -> np.ndarray:
    return np.flatnonzero(best == np.arange(best.size, dtype=np.uint32))


def generate_census(n: int) -> list[Digraph]:
    """One canonical representative per isomorphism class, sorted by code."""
    if n == 0:
        return [Digraph(0)]
    return [digraph_from_code(n, int(c)) for c in _representatives(canonical_codes(n))]


def linear_upper_bounds(n_max: int) -> dict[str, Fraction]:
    """Upper bound on the linear symmetric DoF of every class up to ``n_max`` vertices.

    Deleting a user or an interfering link never lowers the linear
    symmetric DoF of the remaining users, so the bound of a digraph is the
    least of its own clique-cycle bound, the known linear optimum of the
    special instances, and the bounds of every one-vertex and one-arc
    deletion.
    """
    from .dof import outer_symmetric, special_instance

    bounds: dict[str, Fraction] = {}
    tables: dict[int, np.ndarray] = {}
    for n in range(1, n_max + 1):
        best = canonical_codes(n)
        tables[n] = best
        total = n * (n - 1)
        idx = pair_index(n)
        sub_idx = pair_index(n - 1) if n > 1 else {}
        reps = sorted((int(c) for c in _representatives(best)), key=lambda c: (c.bit_count(), c))
        local: dict[int, Fraction] = {}
        for c in reps:
            d = digraph_from_code(n, c)
            val = outer_symmetric(d)
            if special_instance(d):
                val = min(val, Fraction(2, 5))
            for k in range(total):
                bit = 1 << (total - 1 - k)
                if c & bit:
                    val = min(val, local[int(best[c ^ bit])])
            for w in range(1, n + 1) if n > 1 else ():
                relabel = {v: v - (v > w) for v in d.vertices if v != w}
                sub = 0
                for u, v in d.arcs:
                    if u != w and v != w:
                        sub |= 1 << ((n - 1) * (n - 2) - 1 - sub_idx[(relabel[u], relabel[v])])
                val = min(val, bounds[f"{n - 1}:{int(tables[n - 1][sub]):0{(n - 1) * (n - 2)}b}"
                                      if n > 2 else f"{n - 1}:"])
            local[c] = val
            bounds[f"{n}:{c:0{total}b}" if total else f"{n}:"] = val
    return bounds


def is_perfect_digraph(d: Digraph) -> bool:
    """No chordless dicycle of length three or more and a perfect symmetric part."""
    if any(len(c) >= 3 for c in minimal_dicycles(d)):
        return False
    return is_perfect_graph(derived_views(d)["symmetric_part"])


def analyze_instance(d: Digraph) -> CensusRecord:
    """Classification, coloring numbers and symmetric-DoF status of one instance."""
    cid = canonical_form(d)[0]
    verdict = classify_case(d)
    chi, _ = dichromatic_number(d)
    chif, _ = fractional_dichromatic(d)
    sym = symmetric_dof(d)
    target = ""
    if sym.reduced is not None:
        target = canonical_form(sym.reduced)[0]
    return CensusRecord(
        cid, d.n, len(d.arcs), verdict.case, chi, format_rational(chif),
        format_rational(sym.achievable), format_rational(sym.outer), sym.status, target,
    )


def cache_dir() -> Path:
    return Path(os.environ.get("TIMMP_CACHE_DIR", Path.home() / ".cache" / "timmp"))


def run_census(n: int, jobs: int = 1, force: bool = False, use_cache: bool = True) -> list[CensusRecord]:
    """Analyse every instance on ``n`` vertices, reusing the JSON cache if present."""
    path = cache_dir() / f"census_n{n}.json"
    if use_cache and not force and path.exists():
        with open(path) as fh:
            return [CensusRecord(**r) for r in json.load(fh)]
    instances = generate_census(n)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(analyze_instance, instances, chunksize=64))
    else:
        records = [analyze_instance(d) for d in instances]
    if any(r.status == "gap" for r in records):
        bounds = linear_upper_bounds(n)
        records = [
            replace(r, status="linear_optimal") if r.status == "gap" and Fraction(r.dsym_achievable) == bounds[r.id]
            else r
            for r in records
        ]
    records.sort(key=lambda r: r.id)
    if use_cache:
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            with open(path, "w") as fh:
                json.dump([r.to_row() for r in records], fh)
        except OSError as exc:
            raise OSError(f"cannot write census cache {path}: {exc}") from exc
    return records


def reduction_pipeline(instances: Iterable[Digraph]) -> list[Digraph]:
    """Irreducible, all-arcs-critical, imperfect instances, one per isomorphism class.

    Instances that are not strongly connected are dropped (some vertex is
    reducible), arcs on no chordless dicycle are removed until none remain,
    and perfect digraphs are discarded.
    """
    seen: dict[str, Digraph] = {}
    for d in instances:
        while True:
            if len(strong_components(d)) != 1:
                d = None
                break
            stripped = strip_noncritical(d)
            if stripped == d:
                break
            d = stripped
        if d is None or is_perfect_digraph(d):
            continue
        form = canonical_form(d)[0]
        seen.setdefault(form, digraph_from_code(d.n, int(form.split(":")[1], 2)))
    return [seen[k] for k in sorted(seen)]


def summary_line(records: Sequence[CensusRecord]) -> str:
    n = len(records)
    opt = sum(r.status == "optimal" for r in records)
    lin = sum(r.status == "linear_optimal" for r in records)
    gap = n - opt - lin
    line = f"{n} instances, {opt} optimal"
    if lin:
        line += f", {lin} linear_optimal"
    if gap:
        line += f", {gap} gap"
    return line


def write_report(records: Sequence[CensusRecord], out: str | Path) -> Path:
    """CSV with one row per record; rationals as ``p/q``."""
    out = Path(out)
    try:
        with open(out, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=CSV_FIELDS, lineterminator="\n")
            w.writeheader()
            for r in sorted(records, key=lambda r: r.id):
                w.writerow(r.to_row())
    except OSError as exc:
        raise OSError(f"cannot write census report {out}: {exc}") from exc
    return out
