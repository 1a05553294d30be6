"""Acceptance criteria: one recorded PASS/FAIL line per criterion."""

import random
import time
from fractions import Fraction

import pytest

from helpers import partition_chromatic, random_digraph
from test_census import RESIDUAL_N4
from timmp.catalog import c52_digraph, directed_cycle, pentagram_digraph, clique_feeder_digraph, pair_feeder_digraph, chordal_topology, j3_digraph
from timmp.census import generate_census, reduction_pipeline
from timmp.coloring import (
    dichromatic_number,
    extract_schedule,
    fractional_dichromatic,
    local_fractional_dichromatic,
    simulate_schedule,
)
from timmp.catalog import bidirected_complete
from timmp.dof import dof_region, outer_symmetric, symmetric_dof, time_sharing_certificate
from timmp.graphs import build_conflict_digraph, canonical_form, triangular_topology
from timmp.polyhedra import (
    BinaryMatrix,
    RationalPolytope,
    circulant,
    enumerate_vertices,
    fano,
    find_mni_submatrix,
    is_balanced,
    is_ideal,
    is_totally_unimodular,
    projective,
    vertices_by_bases,
)
from timmp.sic import cover_bounds, passing_is_helpful, reduce_instance
from timmp.tradeoff import breakpoints, tradeoff_curve


def _small_census():
    return [d for n in range(1, 5) for d in generate_census(n)]


def test_ac01_census_counts(criterion):
    start = time.perf_counter()
    counts = [len(generate_census(n)) for n in range(1, 5)]
    elapsed = time.perf_counter() - start
    criterion(1, "census counts 1, 3, 16, 218 in under 10 s", counts == [1, 3, 16, 218] and elapsed < 10,
              f"{counts}, {elapsed:.2f} s")


@pytest.mark.slow
def test_ac01_census_five_users(criterion):
    start = time.perf_counter()
    count = len(generate_census(5))
    elapsed = time.perf_counter() - start
    criterion(1, "optional n = 5 census has 9608 instances", count == 9608 and elapsed < 1800, f"{count}, {elapsed:.1f} s")


def test_ac02_reduction_to_six(criterion, census4):
    start = time.perf_counter()
    residual = {canonical_form(d)[0] for d in reduction_pipeline(census4)}
    elapsed = time.perf_counter() - start
    expected = {canonical_form(d)[0] for d in RESIDUAL_N4.values()}
    criterion(2, "n = 4 pipeline leaves the six known residual digraphs", residual == expected and elapsed < 30,
              f"{len(residual)} residual, {elapsed:.2f} s")


def test_ac03_three_users(criterion):
    failures = []
    for d in generate_census(3):
        region = dof_region(d)
        for p in region.extreme_points:
            if not set(p) <= {0, 1} or not d.is_acyclic([k + 1 for k, x in enumerate(p) if x]):
                failures.append((canonical_form(d)[0], "vertex", p))
        cert = time_sharing_certificate(d)
        point = [sum((c for s, c in cert if v in s), Fraction(0)) for v in d.vertices]
        target = outer_symmetric(d)
        if sum(c for _, c in cert) != 1 or point != [target] * d.n or not all(d.is_acyclic(s) for s, _ in cert):
            failures.append((canonical_form(d)[0], "certificate"))
        if symmetric_dof(d).status != "optimal":
            failures.append((canonical_form(d)[0], "status"))
    criterion(3, "all 16 three-user instances optimal with 0/1 acyclic extreme points", not failures,
              f"{len(failures)} failures")


def test_ac04_exact_values(criterion):
    checks = {f"C_{K}": fractional_dichromatic(directed_cycle(K))[0] == Fraction(K, K - 1) for K in range(2, 7)}
    for name, d in [("pentagram", pentagram_digraph()), ("c52", c52_digraph()), ("j3", j3_digraph())]:
        checks[name] = fractional_dichromatic(d)[0] == Fraction(5, 2)
    for name, d in [("c52 dsym", c52_digraph()), ("j3 dsym", j3_digraph())]:
        s = symmetric_dof(d)
        checks[name] = s.achievable == Fraction(2, 5) and s.status == "linear_optimal"
    bad = [k for k, ok in checks.items() if not ok]
    criterion(4, "exact fractional dichromatic numbers and 2/5 linear optimum", not bad, f"failed: {bad}" if bad else "")


def test_ac05_matrix_classes(criterion):
    start = time.perf_counter()
    checks = {f"c({n},2) ideal={n % 2 == 0}": bool(is_ideal(circulant(n, 2))) == (n % 2 == 0) for n in range(3, 9)}
    for n, r in [(6, 3), (9, 3), (8, 4)]:
        checks[f"c({n},{r}) ideal"] = bool(is_ideal(circulant(n, r)))
    checks["j3 not ideal"] = not is_ideal(projective(3))
    checks["fano not ideal"] = not is_ideal(fano())
    two_triangles = BinaryMatrix.from_rows([[1, 1, 1, 0], [1, 0, 1, 1]])
    checks["two_triangles TU"] = bool(is_totally_unimodular(two_triangles))
    three_triangles = BinaryMatrix.from_rows([[1, 1, 1, 0, 0, 0], [0, 0, 1, 1, 1, 0], [0, 1, 0, 1, 0, 1]])
    hit = find_mni_submatrix(three_triangles)
    checks["three_triangles unbalanced"] = not is_balanced(three_triangles)
    checks["three_triangles not ideal"] = not is_ideal(three_triangles)
    checks["three_triangles witness"] = hit is not None and hit[0] == "circulant(3,2)"
    elapsed = time.perf_counter() - start
    bad = [k for k, ok in checks.items() if not ok]
    criterion(5, "matrix classification in under 60 s", not bad and elapsed < 60,
              f"{elapsed:.2f} s" + (f", failed: {bad}" if bad else ""))


def test_ac06_local_equals_fractional(criterion, census4):
    bad = [canonical_form(d)[0] for d in census4 if local_fractional_dichromatic(d) != fractional_dichromatic(d)[0]]
    criterion(6, "local fractional = fractional on all 218 four-user instances", not bad, f"{len(bad)} mismatches")


def test_ac07_four_users_linear_optimal(criterion, census4_records):
    bad = [
        r.id for r in census4_records
        if r.status not in ("optimal", "linear_optimal") or Fraction(r.dsym_achievable) != 1 / Fraction(r.chi_Af)
    ]
    gaps = sum(r.status == "gap" for r in census4_records)
    criterion(7, "every four-user instance optimal or linear_optimal, zero gaps", not bad and gaps == 0,
              f"{len(census4_records)} records, {gaps} gaps")


def test_ac08_tradeoff(criterion):
    start = time.perf_counter()
    curve = tradeoff_curve(triangular_topology(4), 6)
    elapsed = time.perf_counter() - start
    rates = [r for _, r, _ in curve]
    ok = breakpoints(curve) == [(0, 4), (1, 3), (2, 2), (6, 1)] and rates == sorted(rates, reverse=True)
    criterion(8, "triangular tradeoff (0,4) (1,3) (2,2) (6,1)", ok and elapsed < 60,
              f"{breakpoints(curve)}, {elapsed:.2f} s")


def test_ac09_helpfulness(criterion):
    d = build_conflict_digraph(chordal_topology())
    a = passing_is_helpful(d, (1, 3))
    b = passing_is_helpful(d, (3, 1))
    ok = (
        a.helpful is True
        and (a.rate_before, a.rate_after) == (Fraction(1, 3), Fraction(1, 2))
        and b.helpful is False
        and b.chordal_bipartite
        and b.region_before == b.region_after
    )
    criterion(9, "chordal network passings: (1,3) helpful 1/3 -> 1/2, (3,1) not helpful", ok)


def test_ac10_oracle_equivalence(criterion):
    start = time.perf_counter()
    rng = random.Random(2024)
    mismatches = 0
    instances = _small_census() + generate_census(5)
    for d in instances:
        mismatches += dichromatic_number(d)[0] != partition_chromatic(d)
    for _ in range(200):
        d = random_digraph(rng, 6, rng.random())
        mismatches += dichromatic_number(d)[0] != partition_chromatic(d)
    for _ in range(100):
        dim = rng.randint(1, 4)
        rows = [
            (tuple(rng.randint(-2, 3) for _ in range(dim)), rng.choice(["<=", ">="]), rng.randint(-1, 4))
            for _ in range(rng.randint(1, 5))
        ]
        p = RationalPolytope.from_rows(dim, rows).with_box()
        mismatches += enumerate_vertices(p) != vertices_by_bases(p)
    for d in _small_census():
        mismatches += cover_bounds(d)["weakly_degenerate_cover"] < fractional_dichromatic(d)[0]
    elapsed = time.perf_counter() - start
    criterion(10, "oracle equivalence for coloring, vertices and degenerate covers", mismatches == 0 and elapsed < 300,
              f"{len(instances)} census + 200 random digraphs, 100 polytopes, {elapsed:.1f} s")


def test_ac11_schedule_simulation(criterion):
    bad = []
    for d in _small_census():
        value, sol = fractional_dichromatic(d)
        sim = simulate_schedule(d, extract_schedule(d, sol))
        if not sim.ok or set(sim.rates.values()) != {1 / value}:
            bad.append(canonical_form(d)[0])
    criterion(11, "schedules for all n <= 4 instances simulate at rate 1/chi_Af", not bad, f"{len(bad)} failures")


def test_ac12_reducibility(criterion):
    a = reduce_instance(clique_feeder_digraph())
    b = reduce_instance(pair_feeder_digraph())
    ok = (
        a.reduced == bidirected_complete(4) and a.rate == 4 and a.certified
        and b.reduced == directed_cycle(2) and b.rate == 2 and b.certified
    )
    criterion(12, "feeder reductions: K_4 at rate 4, C_2 at rate 2", ok)
