"""Command-line entry point: ``timmp <subcommand> ...``.

Exit status is 0 on success, 2 on invalid input and 3 when a size guard
refuses the request.  Errors are printed to stderr as a single line
``error <CODE>: <message>``.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from .catalog import NAMED
from .census import CENSUS_MAX_N, run_census, summary_line, write_report
from .coloring import dichromatic_number, extract_schedule, fractional_dichromatic, simulate_schedule
from .dof import classify_case, dof_region, symmetric_dof
from .enumeration import maximal_acyclic_sets, maximal_cliques, minimal_dicycles
from .graphs import (
    BipartiteTopology,
    Digraph,
    GraphError,
    SizeLimitError,
    build_conflict_digraph,
    canonical_form,
    read_json,
)
from .lp import format_rational
from .polyhedra import (
    BinaryMatrix,
    find_mni_minor,
    find_mni_submatrix,
    is_balanced,
    is_ideal,
    is_perfect_matrix,
    is_totally_unimodular,
    named_matrix,
)
from .sic import best_single_round_rate, critical_arcs, passing_is_helpful, reduce_instance
from .tradeoff import tradeoff_curve

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_GUARD = 3


class CliError(Exception):
    def __init__(self, code: str, message: str, status: int = EXIT_INVALID):
        super().__init__(message)
        self.code = code
        self.status = status


# ---------------------------------------------------------------------------
# input helpers


def _load_json(path: str) -> dict:
    try:
        return read_json(path)
    except FileNotFoundError as exc:
        raise CliError("E_IO", f"{path}: file not found") from exc
    except json.JSONDecodeError as exc:
        raise CliError("E_SCHEMA", f"{path}: invalid JSON ({exc})") from exc


def _load_conflict(args) -> Digraph:
    if getattr(args, "topology", None):
        data = _load_json(args.topology)
        try:
            return build_conflict_digraph(BipartiteTopology.from_json(data))
        except (GraphError, KeyError, TypeError, ValueError) as exc:
            raise CliError("E_SCHEMA", f"{args.topology}: {exc}") from exc
    if getattr(args, "digraph", None):
        path = args.digraph
        if path.endswith(".dot"):
            try:
                return Digraph.from_dot(Path(path).read_text())
            except OSError as exc:
                raise CliError("E_IO", f"{path}: {exc}") from exc
        data = _load_json(path)
        try:
            return Digraph.from_json(data)
        except (GraphError, ValueError) as exc:
            raise CliError("E_SCHEMA", f"{path}: {exc}") from exc
    name = args.named
    if name not in NAMED:
        raise CliError("E_SCHEMA", f"unknown named digraph {name!r}; choose from {sorted(NAMED)}")
    return NAMED[name]()


def _add_input(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--topology", metavar="FILE", help="bipartite topology JSON")
    g.add_argument("--digraph", metavar="FILE", help="conflict digraph JSON (or .dot)")
    g.add_argument("--named", metavar="NAME", help=f"built-in digraph: {', '.join(sorted(NAMED))}")


def _parse_arc(text: str) -> tuple[int, int]:
    try:
        i, j = (int(x) for x in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"arc must be 'i,j', got {text!r}") from exc
    return i, j


def _write_json(path: str, payload) -> None:
    try:
        with open(path, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
    except OSError as exc:
        raise CliError("E_IO", f"cannot write {path}: {exc}") from exc


class _Out:
    """Collects human lines and a machine payload; prints one of them."""

    def __init__(self, args):
        self.json = args.json
        self.quiet = args.quiet
        self.lines: list[str] = []
        self.payload: dict = {}

    def line(self, text: str) -> None:
        self.lines.append(text)

    def flush(self) -> None:
        if self.json:
            print(json.dumps(self.payload, sort_keys=True))
        elif not self.quiet:
            for t in self.lines:
                print(t)


# ---------------------------------------------------------------------------
# subcommands


def cmd_analyze(args, out: _Out) -> int:
    d = _load_conflict(args)
    verdict = classify_case(d)
    region = dof_region(d, verdict)
    chi, _ = dichromatic_number(d)
    chif, sol = fractional_dichromatic(d)
    sym = symmetric_dof(d)
    out.payload = {
        "digraph": d.to_json(),
        "canonical_form": canonical_form(d)[0],
        "chi_A": chi,
        "chi_Af": format_rational(chif),
        "fractional_solution": sol.to_json(),
        "symmetric_dof": sym.to_json(),
        "region": region.to_json(),
    }
    if args.dump_structures:
        out.payload["structures"] = {
            "maximal_cliques": maximal_cliques(d).to_json(),
            "minimal_dicycles": minimal_dicycles(d).to_json(),
            "maximal_acyclic_sets": maximal_acyclic_sets(d).to_json(),
        }
    if args.report:
        _write_json(args.report, out.payload)
    out.line(f"n={d.n} arcs={len(d.arcs)} case={verdict.case}")
    out.line(f"chi_A={chi} chi_Af={format_rational(chif)}")
    out.line(
        f"d_sym={format_rational(sym.achievable)} ({float(sym.achievable):.4f}) "
        f"outer={format_rational(sym.outer)} status={sym.status}"
    )
    out.line(f"region certified={region.certified} extreme_points={len(region.extreme_points)}")
    if args.dump_structures:
        for key, fam in out.payload["structures"].items():
            out.line(f"{key}: {json.dumps(fam)}")
    return EXIT_OK


def cmd_census(args, out: _Out) -> int:
    if not 1 <= args.n <= CENSUS_MAX_N:
        raise CliError("E_GUARD", f"census limited to 1 <= n <= {CENSUS_MAX_N}", EXIT_GUARD)
    if args.n == CENSUS_MAX_N and not args.allow_slow:
        raise CliError("E_GUARD", f"n={CENSUS_MAX_N} runs for minutes; pass --allow-slow", EXIT_GUARD)
    records = run_census(args.n, jobs=args.jobs, force=args.force, use_cache=not args.no_cache)
    if args.out:
        write_report(records, args.out)
    summary = summary_line(records)
    out.payload = {"n": args.n, "summary": summary, "records": [r.to_row() for r in records]}
    out.line(summary)
    return EXIT_OK


def cmd_schedule(args, out: _Out) -> int:
    d = _load_conflict(args)
    value, sol = fractional_dichromatic(d)
    sched = extract_schedule(d, sol, exact=True)
    sim = simulate_schedule(d, sched)
    out.payload = {
        "chi_Af": format_rational(value),
        "schedule": sched.to_json(),
        "simulation": {
            "ok": sim.ok,
            "rates": {str(v): format_rational(r) for v, r in sorted(sim.rates.items())},
            "failed_slot": sim.failed_slot,
            "reason": sim.reason,
        },
    }
    if args.out:
        _write_json(args.out, out.payload)
    out.line(f"period T={sched.T} slots, chi_Af={format_rational(value)}")
    for k, (members, order) in enumerate(sched.slots):
        out.line(f"  slot {k}: set={list(members)} order={list(order)}")
    if sim.ok:
        rates = sorted(set(sim.rates.values()))
        out.line(f"simulation ok; per-message rates {[format_rational(r) for r in rates]}")
        return EXIT_OK
    out.line(f"simulation failed at slot {sim.failed_slot}: {sim.reason}")
    return 1


def cmd_tradeoff(args, out: _Out) -> int:
    d = _load_conflict(args)
    curve = tradeoff_curve(d, args.budget)
    rows = [{"p": p, "r": r, "witness_arcs": ";".join(f"{i}-{j}" for i, j in X)} for p, r, X in curve]
    if args.out:
        try:
            with open(args.out, "w", newline="") as fh:
                w = csv.DictWriter(fh, fieldnames=["p", "r", "witness_arcs"], lineterminator="\n")
                w.writeheader()
                w.writerows(rows)
        except OSError as exc:
            raise CliError("E_IO", f"cannot write {args.out}: {exc}") from exc
    out.payload = {"curve": rows}
    for row in rows:
        out.line(f"p={row['p']} r={row['r']} X={row['witness_arcs'] or '-'}")
    return EXIT_OK


_CHECKS = {
    "tu": is_totally_unimodular,
    "balanced": is_balanced,
    "ideal": is_ideal,
    "perfect": is_perfect_matrix,
}


def _load_matrix(args) -> BinaryMatrix:
    if args.file:
        data = _load_json(args.file)
        try:
            return BinaryMatrix.from_json(data)
        except (KeyError, TypeError, ValueError) as exc:
            raise CliError("E_SCHEMA", f"{args.file}: {exc}") from exc
    kind, _, params = args.named.partition(":")
    try:
        nums = [int(x) for x in params.split(",") if x]
        return named_matrix(kind, *nums)
    except (TypeError, ValueError) as exc:
        raise CliError("E_SCHEMA", f"bad matrix name {args.named!r}: {exc}") from exc


def cmd_matrix_check(args, out: _Out) -> int:
    m = _load_matrix(args)
    if args.kind == "mni":
        hit = find_mni_submatrix(m)
        out.payload = {"kind": "mni", "result": hit is not None}
        if hit:
            name, rows, cols = hit
            out.payload["witness"] = {"name": name, "rows": rows, "cols": cols}
            out.line(f"mni submatrix: {name} rows={rows} cols={cols}")
        else:
            out.line("mni submatrix: none")
        return EXIT_OK
    verdict = _CHECKS[args.kind](m)
    out.payload = verdict.to_json()
    out.line(f"{args.kind}: {str(verdict.result).lower()}")
    if verdict.witness:
        out.line(f"  witness: {json.dumps(out.payload['witness'])}")
    if args.kind == "ideal" and not verdict.result:
        hit = find_mni_submatrix(m)
        if hit:
            name, rows, cols = hit
            out.payload["mni"] = {"name": name, "rows": rows, "cols": cols, "via": "submatrix"}
        else:
            minor = find_mni_minor(m)
            if minor:
                name, deleted, contracted = minor
                out.payload["mni"] = {"name": name, "deleted": deleted, "contracted": contracted, "via": "minor"}
        if "mni" in out.payload:
            out.line(f"  mni witness: {out.payload['mni']['name']}")
    return EXIT_OK


def cmd_sic(args, out: _Out) -> int:
    d = _load_conflict(args)
    if args.op == "rate":
        r, order = best_single_round_rate(d)
        out.payload = {"rate": r, "order": list(order.order)}
        out.line(f"single-round rate {r} with order {list(order.order)}")
    elif args.op == "reduce":
        red = reduce_instance(d)
        out.payload = red.to_json()
        out.line(
            f"kept {list(red.kept)} removed {sorted(red.reducible_vertices)} "
            f"rate={format_rational(red.rate)} certified={red.certified} case={red.case}"
        )
    elif args.op == "critical":
        labels = critical_arcs(d)
        out.payload = {
            "arcs": [{"arc": list(a), "label": lab.label, "certificate": lab.certificate} for a, lab in labels.items()]
        }
        for a, lab in labels.items():
            out.line(f"{a[0]}->{a[1]}: {lab.label}")
    else:
        if args.arc is None:
            raise CliError("E_SCHEMA", "--op helpful needs --arc i,j")
        try:
            verdict = passing_is_helpful(d, args.arc)
        except GraphError as exc:
            raise CliError("E_SCHEMA", str(exc)) from exc
        out.payload = verdict.to_json()
        status = {True: "helpful", False: "not helpful", None: "unknown"}[verdict.helpful]
        out.line(f"passing {args.arc[0]}->{args.arc[1]}: {status}")
        if verdict.witness:
            out.line(f"  new dicycle: {list(verdict.witness)}")
        if verdict.rate_before is not None:
            out.line(
                f"  linear d_sym {format_rational(verdict.rate_before)} -> {format_rational(verdict.rate_after)}"
            )
    return EXIT_OK


def cmd_export_dot(args, out: _Out) -> int:
    d = _load_conflict(args)
    dot_path = Path(args.out)
    sidecar = dot_path.with_suffix(".json")
    try:
        dot_path.write_text(d.to_dot())
    except OSError as exc:
        raise CliError("E_IO", f"cannot write {dot_path}: {exc}") from exc
    payload = {**d.to_json(), "canonical_form": canonical_form(d)[0]}
    _write_json(str(sidecar), payload)
    out.payload = {"dot": str(dot_path), "sidecar": str(sidecar), "canonical_form": payload["canonical_form"]}
    out.line(f"wrote {dot_path} and {sidecar}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS, help="suppress human output")

    parser = argparse.ArgumentParser(prog="timmp", description="Interference management with message passing.")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--quiet", action="store_true", help="suppress human output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="DoF region, case and symmetric DoF")
    _add_input(p)
    p.add_argument("--report", metavar="FILE", help="write the full JSON report")
    p.add_argument("--dump-structures", action="store_true", help="list cliques, dicycles and maximal acyclic sets")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("census", parents=[common], help="all non-isomorphic digraphs on n vertices")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", metavar="FILE", help="CSV report")
    p.add_argument("--force", action="store_true", help="ignore the cache")
    p.add_argument("--no-cache", action="store_true", help="neither read nor write the cache")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--allow-slow", action="store_true", help=f"permit n={CENSUS_MAX_N}")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("schedule", parents=[common], help="orthogonal-access schedule and simulation")
    _add_input(p)
    p.add_argument("--out", metavar="FILE", help="schedule JSON")
    p.set_defaults(func=cmd_schedule)

    p = sub.add_parser("tradeoff", parents=[common], help="rate against message-passing budget")
    _add_input(p)
    p.add_argument("--budget", type=int, required=True)
    p.add_argument("--out", metavar="FILE", help="CSV with columns p, r, witness_arcs")
    p.set_defaults(func=cmd_tradeoff)

    p = sub.add_parser("matrix-check", parents=[common], help="TU, balanced, ideal, perfect or MNI test")
    p.add_argument("--kind", choices=["tu", "balanced", "ideal", "perfect", "mni"], required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--file", metavar="FILE", help="matrix JSON")
    g.add_argument("--named", metavar="NAME", help="e.g. circulant:3,2, projective:4, fano")
    p.set_defaults(func=cmd_matrix_check)

    p = sub.add_parser("sic", parents=[common], help="successive index coding views")
    _add_input(p)
    p.add_argument("--op", choices=["rate", "reduce", "critical", "helpful"], required=True)
    p.add_argument("--arc", type=_parse_arc, help="candidate passing i,j for --op helpful")
    p.set_defaults(func=cmd_sic)

    p = sub.add_parser("export-dot", parents=[common], help="DOT file plus JSON sidecar")
    _add_input(p)
    p.add_argument("--out", metavar="FILE", required=True)
    p.set_defaults(func=cmd_export_dot)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    out = _Out(args)
    try:
        status = args.func(args, out)
    except CliError as exc:
        print(f"error {exc.code}: {exc}", file=sys.stderr)
        return exc.status
    except SizeLimitError as exc:
        print(f"error E_GUARD: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (GraphError, ValueError) as exc:
        print(f"error E_INVALID: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error E_IO: {exc}", file=sys.stderr)
        return EXIT_INVALID
    out.flush()
    return status


if __name__ == "__main__":
    sys.exit(main())
