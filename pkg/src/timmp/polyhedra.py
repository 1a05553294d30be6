"""Rational polytopes, exact vertex enumeration and 0/1 matrix classes.

Vertex enumeration uses the double description method on the homogenized
cone, in integer arithmetic throughout.  Matrix classes (totally
unimodular, balanced, ideal, perfect) are decided by brute force at the
small sizes the DoF analysis needs; a catalog of minimally non-ideal (MNI)
matrices gives explanatory witnesses.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .graphs import SizeLimitError

__all__ = [
    "BinaryMatrix",
    "RationalPolytope",
    "MatrixVerdict",
    "incidence_matrix",
    "named_matrix",
    "circulant",
    "projective",
    "fano",
    "enumerate_vertices",
    "vertices_by_bases",
    "bareiss_determinant",
    "is_totally_unimodular",
    "is_balanced",
    "is_ideal",
    "is_perfect_matrix",
    "covering_polytope",
    "packing_polytope",
    "find_mni_submatrix",
    "find_mni_minor",
    "mni_catalog",
    "permutation_equivalent",
    "VERTEX_MAX_DIM",
    "VERTEX_MAX_CONSTRAINTS",
]

VERTEX_MAX_DIM = 10
VERTEX_MAX_CONSTRAINTS = 60
SUBMATRIX_MAX_ENTRIES = 128


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class BinaryMatrix:
    """A 0/1 matrix stored as a tuple of row tuples."""

    rows: int
    cols: int
    data: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        data = tuple(tuple(int(x) for x in row) for row in self.data)
        if len(data) != self.rows or any(len(r) != self.cols for r in data):
            raise ValueError(f"matrix entries do not match declared shape {self.rows}x{self.cols}")
        if any(x not in (0, 1) for r in data for x in r):
            raise ValueError("matrix entries must be 0 or 1")
        object.__setattr__(self, "data", data)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "BinaryMatrix":
        rows = [tuple(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, tuple(rows))

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "BinaryMatrix":
        cols = list(cols)
        return BinaryMatrix.from_rows([[self.data[i][j] for j in cols] for i in rows], len(cols))

    def row_masks(self) -> list[int]:
        return [sum(1 << j for j, x in enumerate(r) if x) for r in self.data]

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "data": [list(r) for r in self.data]}

    @classmethod
    def from_json(cls, data: dict) -> "BinaryMatrix":
        try:
            return cls(int(data["rows"]), int(data["cols"]), tuple(tuple(r) for r in data["data"]))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed matrix JSON: {exc}") from exc

    def __str__(self) -> str:
        return "\n".join(" ".join(str(x) for x in r) for r in self.data)


def incidence_matrix(family: Iterable[Iterable[int]], n: int) -> BinaryMatrix:
    """Row ``i`` marks the (1-based) vertices of member ``i``."""
    rows = []
    for member in family:
        row = [0] * n
        for v in member:
            if not 1 <= v <= n:
                raise ValueError(f"vertex {v} out of range 1..{n}")
            row[v - 1] = 1
        rows.append(row)
    return BinaryMatrix.from_rows(rows, n)


def circulant(n: int, r: int) -> BinaryMatrix:
    """Row ``i`` covers columns ``i, ..., i + r - 1`` modulo ``n``."""
    if not 1 <= r <= n:
        raise ValueError(f"circulant needs 1 <= r <= n, got n={n}, r={r}")
    return BinaryMatrix.from_rows([[1 if (j - i) % n < r else 0 for j in range(n)] for i in range(n)], n)


def projective(n: int) -> BinaryMatrix:
    """Degenerate projective plane: rows ``{1..n}, {0,1}, ..., {0,n}`` on columns ``0..n``."""
    if n < 2:
        raise ValueError(f"degenerate projective plane needs n >= 2, got {n}")
    rows = [[0] + [1] * n]
    for k in range(1, n + 1):
        row = [0] * (n + 1)
        row[0] = row[k] = 1
        rows.append(row)
    return BinaryMatrix.from_rows(rows, n + 1)


def fano() -> BinaryMatrix:
    seed = (1, 1, 0, 1, 0, 0, 0)
    return BinaryMatrix.from_rows([[seed[(j - i) % 7] for j in range(7)] for i in range(7)], 7)


def named_matrix(kind: str, *params: int) -> BinaryMatrix:
    """``named_matrix("circulant", n, r)``, ``("projective", n)`` or ``("fano",)``."""
    if kind == "circulant":
        return circulant(*params)
    if kind == "projective":
        return projective(*params)
    if kind == "fano":
        return fano()
    raise ValueError(f"unknown matrix kind {kind!r}")


# ---------------------------------------------------------------------------
# polytopes


@dataclass(frozen=True)
class RationalPolytope:
    """H-representation ``{x : a.x (<= | >=) b}`` with exact coefficients."""

    dimension: int
    inequalities: tuple[tuple[tuple[Fraction, ...], str, Fraction], ...]

    def __post_init__(self):
        norm = []
        for coeffs, sense, rhs in self.inequalities:
            if sense not in ("<=", ">="):
                raise ValueError(f"unknown sense {sense!r}")
            if len(coeffs) != self.dimension:
                raise ValueError("coefficient vector has wrong length")
            norm.append((tuple(Fraction(c) for c in coeffs), sense, Fraction(rhs)))
        object.__setattr__(self, "inequalities", tuple(norm))

    @classmethod
    def from_rows(cls, dimension: int, rows: Iterable[tuple[Sequence, str, object]]) -> "RationalPolytope":
        return cls(dimension, tuple((tuple(a), s, b) for a, s, b in rows))

    def leq_form(self) -> list[tuple[tuple[Fraction, ...], Fraction]]:
        """Every inequality rewritten as ``a.x <= b``."""
        out = []
        for a, s, b in self.inequalities:
            out.append((a, b) if s == "<=" else (tuple(-x for x in a), -b))
        return out

    def contains(self, x: Sequence) -> bool:
        return all(sum(ai * xi for ai, xi in zip(a, x)) <= b for a, b in self.leq_form())

    def with_box(self) -> "RationalPolytope":
        rows = list(self.inequalities)
        for j in range(self.dimension):
            e = tuple(Fraction(int(i == j)) for i in range(self.dimension))
            rows.append((e, ">=", Fraction(0)))
            rows.append((e, "<=", Fraction(1)))
        return RationalPolytope(self.dimension, tuple(rows))


def _box_rows(n: int) -> list:
    rows = []
    for j in range(n):
        e = [0] * n
        e[j] = 1
        rows.append((tuple(e), ">=", 0))
        rows.append((tuple(e), "<=", 1))
    return rows


def covering_polytope(m: BinaryMatrix) -> RationalPolytope:
    """``{0 <= y <= 1, m y >= 1}``."""
    return RationalPolytope.from_rows(m.cols, _box_rows(m.cols) + [(r, ">=", 1) for r in m.data])


def packing_polytope(m: BinaryMatrix) -> RationalPolytope:
    """``{0 <= x <= 1, m x <= 1}``."""
    return RationalPolytope.from_rows(m.cols, _box_rows(m.cols) + [(r, "<=", 1) for r in m.data])


def _integer_row(values: Sequence[Fraction]) -> tuple[int, ...]:
    den = 1
    for v in values:
        den = math.lcm(den, Fraction(v).denominator)
    ints = [int(Fraction(v) * den) for v in values]
    return _primitive(ints)


def _primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = math.gcd(g, x)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


def _solve_square(H: list[list[Fraction]]) -> list[list[Fraction]]:
    """Inverse of a non-singular rational matrix by Gauss-Jordan."""
    n = len(H)
    M = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(H)]
    for c in range(n):
        p = next(r for r in range(c, n) if M[r][c] != 0)
        M[c], M[p] = M[p], M[c]
        piv = M[c][c]
        M[c] = [x / piv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return [row[n:] for row in M]


def _check_vertex_guard(p: RationalPolytope) -> None:
    if p.dimension > VERTEX_MAX_DIM or len(p.inequalities) > VERTEX_MAX_CONSTRAINTS:
        raise SizeLimitError(
            f"vertex enumeration limited to dimension <= {VERTEX_MAX_DIM} and "
            f"<= {VERTEX_MAX_CONSTRAINTS} constraints"
        )


def enumerate_vertices(p: RationalPolytope) -> list[tuple[Fraction, ...]]:
    """All extreme points of a bounded polytope, exact and sorted.

    Double description on the cone ``{(x, t) : a.x - b t <= 0, t >= 0}``;
    extreme rays with ``t > 0`` are the vertices.  Ray adjacency uses the
    combinatorial test on sets of tight constraints.

    Raises
    ------
    SizeLimitError
        Beyond the dimension or constraint guard.
    ValueError
        If the polytope is unbounded.
    """
    _check_vertex_guard(p)
    d = p.dimension
    D = d + 1
    rows = [_integer_row(list(a) + [-b]) for a, b in p.leq_form()]
    rows.append(tuple([0] * d + [-1]))  # t >= 0
    rows = list(dict.fromkeys(r for r in rows if any(r)))

    # initial non-singular subsystem, chosen greedily; t >= 0 goes first
    order = [len(rows) - 1] + list(range(len(rows) - 1))
    basis: list[int] = []
    echelon: list[list[Fraction]] = []
    for i in order:
        v = [Fraction(x) for x in rows[i]]
        for e in echelon:
            lead = next(k for k, x in enumerate(e) if x)
            if v[lead]:
                f = v[lead] / e[lead]
                v = [a - f * b for a, b in zip(v, e)]
        if any(v):
            echelon.append(v)
            basis.append(i)
            if len(basis) == D:
                break
    if len(basis) < D:
        raise ValueError("polytope is unbounded (homogenized cone is not pointed)")
    inv = _solve_square([[Fraction(x) for x in rows[i]] for i in basis])
    rays = []
    for k in range(D):
        col = [-inv[r][k] for r in range(D)]
        rays.append(_integer_row(col))

    def dot(a, b):
        return sum(x * y for x, y in zip(a, b))

    processed = list(basis)
    zero = [sum(1 << j for j, i in enumerate(processed) if dot(rows[i], r) == 0) for r in rays]
    remaining = [i for i in range(len(rows)) if i not in set(basis)]
    for i in remaining:
        h = rows[i]
        vals = [dot(h, r) for r in rays]
        pos = [k for k, v in enumerate(vals) if v > 0]
        if not pos:
            bit = 1 << len(processed)
            zero = [z | bit if v == 0 else z for z, v in zip(zero, vals)]
            processed.append(i)
            continue
        neg = [k for k, v in enumerate(vals) if v < 0]
        new_rays = []
        new_zero = []
        need = D - 2
        for a in pos:
            for b in neg:
                common = zero[a] & zero[b]
                if common.bit_count() < need:
                    continue
                if any(k != a and k != b and zero[k] & common == common for k in range(len(rays))):
                    continue
                va, vb = vals[a], vals[b]
                r = _primitive([va * y - vb * x for x, y in zip(rays[a], rays[b])])
                new_rays.append(r)
                new_zero.append(common)
        bit = 1 << len(processed)
        keep = [k for k, v in enumerate(vals) if v <= 0]
        rays = [rays[k] for k in keep] + new_rays
        zero = [zero[k] | (bit if vals[k] == 0 else 0) for k in keep] + [z | bit for z in new_zero]
        processed.append(i)
    pts = {tuple(Fraction(x, r[-1]) for x in r[:-1]) for r in rays if r[-1] > 0}
    return sorted(pts)


def vertices_by_bases(p: RationalPolytope) -> list[tuple[Fraction, ...]]:
    """Reference vertex enumeration: solve every ``d``-subset of constraints."""
    _check_vertex_guard(p)
    d = p.dimension
    rows = p.leq_form()
    out = set()
    for subset in itertools.combinations(range(len(rows)), d):
        A = [list(rows[i][0]) + [rows[i][1]] for i in subset]
        x = _gauss_unique(A, d)
        if x is not None and p.contains(x):
            out.add(tuple(x))
    return sorted(out)


def _gauss_unique(aug: list[list[Fraction]], d: int) -> list[Fraction] | None:
    M = [list(r) for r in aug]
    for c in range(d):
        p = next((r for r in range(c, d) if M[r][c] != 0), None)
        if p is None:
            return None
        M[c], M[p] = M[p], M[c]
        piv = M[c][c]
        M[c] = [x / piv for x in M[c]]
        for r in range(d):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return [M[r][d] for r in range(d)]


# ---------------------------------------------------------------------------
# matrix classes


@dataclass(frozen=True)
class MatrixVerdict:
    """Outcome of a matrix-class test; negative verdicts carry a witness."""

    kind: str
    result: bool
    witness: dict | None = None
    method: str = "exhaustive"

    def __bool__(self) -> bool:
        return self.result

    def to_json(self) -> dict:
        w = None
        if self.witness is not None:
            w = {k: ([str(x) for x in v] if k == "vertex" else v) for k, v in self.witness.items()}
        return {"kind": self.kind, "result": self.result, "method": self.method, "witness": w}


def bareiss_determinant(M: Sequence[Sequence[int]]) -> int:
    """Exact determinant of an integer matrix by fraction-free elimination."""
    A = [list(r) for r in M]
    n = len(A)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if A[r][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def _check_submatrix_guard(m: BinaryMatrix) -> None:
    if m.rows * m.cols > SUBMATRIX_MAX_ENTRIES:
        raise SizeLimitError(f"submatrix search limited to rows*cols <= {SUBMATRIX_MAX_ENTRIES}")


def is_totally_unimodular(m: BinaryMatrix) -> MatrixVerdict:
    """Every square submatrix has determinant in ``{-1, 0, 1}``."""
    _check_submatrix_guard(m)
    for k in range(2, min(m.rows, m.cols) + 1):
        for rs in itertools.combinations(range(m.rows), k):
            for cs in itertools.combinations(range(m.cols), k):
                det = bareiss_determinant([[m.data[i][j] for j in cs] for i in rs])
                if abs(det) > 1:
                    return MatrixVerdict("tu", False, {"rows": list(rs), "cols": list(cs), "det": det})
    return MatrixVerdict("tu", True)


def is_balanced(m: BinaryMatrix) -> MatrixVerdict:
    """No odd-order (>= 3) square submatrix with exactly two ones per row and column."""
    _check_submatrix_guard(m)
    masks = m.row_masks()
    for k in range(3, min(m.rows, m.cols) + 1, 2):
        for rs in itertools.combinations(range(m.rows), k):
            counts = [sum(masks[i] >> j & 1 for i in rs) for j in range(m.cols)]
            cand = [j for j in range(m.cols) if counts[j] == 2]
            if len(cand) < k:
                continue
            for cs in itertools.combinations(cand, k):
                cmask = sum(1 << j for j in cs)
                if all((masks[i] & cmask).bit_count() == 2 for i in rs):
                    return MatrixVerdict("balanced", False, {"rows": list(rs), "cols": list(cs)})
    return MatrixVerdict("balanced", True)


def _integrality(kind: str, poly: RationalPolytope) -> MatrixVerdict:
    for x in enumerate_vertices(poly):
        if any(v.denominator != 1 for v in x):
            return MatrixVerdict(kind, False, {"vertex": list(x)}, method="vertex_enumeration")
    return MatrixVerdict(kind, True, method="vertex_enumeration")


def is_ideal(m: BinaryMatrix) -> MatrixVerdict:
    """The set covering polytope ``{0 <= y <= 1, m y >= 1}`` is integral."""
    return _integrality("ideal", covering_polytope(m))


def is_perfect_matrix(m: BinaryMatrix) -> MatrixVerdict:
    """The set packing polytope ``{0 <= x <= 1, m x <= 1}`` is integral."""
    return _integrality("perfect", packing_polytope(m))


# ---------------------------------------------------------------------------
# MNI catalog

_CIRCULANT_MNI = [(5, 3), (8, 3), (11, 3), (14, 3), (17, 3), (7, 4), (11, 4), (9, 5), (11, 6), (13, 7)]


def mni_catalog(max_rows: int, max_cols: int) -> list[tuple[str, BinaryMatrix]]:
    """Known minimally non-ideal matrices that fit in the given shape."""
    out: list[tuple[str, BinaryMatrix]] = []
    for n in range(3, max_cols + 1, 2):
        if n <= max_rows:
            out.append((f"circulant({n},2)", circulant(n, 2)))
    for n, r in _CIRCULANT_MNI:
        if n <= max_rows and n <= max_cols:
            out.append((f"circulant({n},{r})", circulant(n, r)))
    for n in range(3, max_cols):
        if n + 1 <= max_rows:
            out.append((f"projective({n})", projective(n)))
    if max_rows >= 7 and max_cols >= 7:
        out.append(("fano", fano()))
    out.sort(key=lambda t: (-t[1].cols, -t[1].rows, t[0]))
    return out


def permutation_equivalent(a: BinaryMatrix, b: BinaryMatrix) -> bool:
    """True when ``b`` is ``a`` with rows and columns permuted."""
    if (a.rows, a.cols) != (b.rows, b.cols):
        return False
    if sorted(map(sum, a.data)) != sorted(map(sum, b.data)):
        return False
    acol = [sum(r[j] for r in a.data) for j in range(a.cols)]
    bcol = [sum(r[j] for r in b.data) for j in range(b.cols)]
    if sorted(acol) != sorted(bcol):
        return False
    target_rows = [r for r in b.data]
    used = [False] * a.cols
    perm: list[int] = []

    def extend(t: int) -> bool:
        # perm[j] = column of a placed at column j of b
        if t == a.cols:
            return True
        for j in range(a.cols):
            if used[j] or acol[j] != bcol[t]:
                continue
            perm.append(j)
            prefix_a = Counter(tuple(r[c] for c in perm) for r in a.data)
            prefix_b = Counter(r[: t + 1] for r in target_rows)
            if prefix_a == prefix_b:
                used[j] = True
                if extend(t + 1):
                    return True
                used[j] = False
            perm.pop()
        return False

    return extend(0)


def find_mni_submatrix(m: BinaryMatrix) -> tuple[str, list[int], list[int]] | None:
    """First catalog MNI matrix found as a submatrix, with its row/column selection.

    Catalog members are tried largest first, so a matrix that is itself an
    MNI matrix reports its own name rather than a small odd hole inside it;
    within a member, selections are scanned in lexicographic order.
    """
    _check_submatrix_guard(m)
    for name, target in mni_catalog(m.rows, m.cols):
        p, q = target.rows, target.cols
        trow = sorted(map(sum, target.data))
        for cs in itertools.combinations(range(m.cols), q):
            sub_rows = [tuple(m.data[i][j] for j in cs) for i in range(m.rows)]
            eligible = [i for i in range(m.rows) if sum(sub_rows[i]) in trow]
            for rs in itertools.combinations(eligible, p):
                cand = BinaryMatrix.from_rows([sub_rows[i] for i in rs], q)
                if permutation_equivalent(cand, target):
                    return name, list(rs), list(cs)
    return None


def _minimal_rows(rows: Iterable[int]) -> list[int]:
    uniq = sorted(set(rows), key=lambda r: (r.bit_count(), r))
    return [r for k, r in enumerate(uniq) if not any(s & r == s for s in uniq[:k])]


def find_mni_minor(m: BinaryMatrix) -> tuple[str, list[int], list[int]] | None:
    """First catalog MNI matrix arising as a minor.

    Each column is kept, deleted (rows with a one there are removed, i.e.
    the variable is fixed to one) or contracted (the column is dropped and
    dominating rows are removed).  Returns the catalog name with the
    deleted and contracted columns.
    """
    if m.cols > VERTEX_MAX_DIM:
        raise SizeLimitError(f"minor search limited to {VERTEX_MAX_DIM} columns")
    masks = m.row_masks()
    catalog = mni_catalog(m.rows, m.cols)
    best = None
    for assign in itertools.product((0, 1, 2), repeat=m.cols):
        keep = [j for j, a in enumerate(assign) if a == 0]
        if not keep:
            continue
        deleted = sum(1 << j for j, a in enumerate(assign) if a == 1)
        kmask = sum(1 << j for j in keep)
        rows = [r & kmask for r in masks if not r & deleted]
        if not rows or 0 in rows:
            continue
        rows = _minimal_rows(rows)
        sub = BinaryMatrix.from_rows([[r >> j & 1 for j in keep] for r in rows], len(keep))
        for name, target in catalog:
            if permutation_equivalent(sub, target):
                cand = (len(keep), name,
                        [j for j, a in enumerate(assign) if a == 1],
                        [j for j, a in enumerate(assign) if a == 2])
                if best is None or cand[0] < best[0]:
                    best = cand
                break
    return None if best is None else (best[1], best[2], best[3])
