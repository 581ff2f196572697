"""Command-line front end.

    nk-triad classify <family> <rank> [--dedup] [--json]
    nk-triad analyze  <family> <rank> (--nodes I[,J] | --triality | --cyclic)
    nk-triad table    <AI|AII|AIII|AIV|BC|FIB-AII|FIB-AIII> [--json|--csv] [--deep]
    nk-triad verify   <all|jacobi|identities|tables|fibrations> [--seed N]
                      [--tol F] [--deep]

Exit status: 0 on success, 1 on verification failure, 2 on usage errors.
JSON reports carry ``schema_version: 1.x`` and serialize every rational in
kappa units as a {num, den} pair.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import tables
from .automorph import (
    NotOrderThree,
    classify_type,
    enumerate_inner_order3,
    realize_cyclic_c3,
    realize_triality_d4,
)
from .fibration import all_fibrations
from .nk_analyzer import (
    NKReport,
    build_report,
    einstein_check,
    verify_curvature_identities,
    verify_min_connection_identity,
    verify_prop_table_relations,
    verify_ricci_oracle,
    verify_sat_identities,
    verify_structure_identities,
)
from .rootsys import InvalidRank
from .tables import TABLES, TableMismatch, cached_algebra, cached_root_system

SCHEMA_VERSION = "1.0"

_CLASSIFY_NK = {"A3I": "hermitian-symmetric (Kahler)", "A3II": "III",
                "A3III": "IV", "A3IV": "I"}


def _frac(x):
    return None if x is None else tables.frac_json(Fraction(x))


def _report_json(report: NKReport) -> dict:
    eig = lambda es: [{"layer": e.layer, "value": _frac(e.value), "dim": e.dim}
                      for e in es]
    return {
        "name": report.name,
        "algebra": report.algebra,
        "automorphism": report.automorphism,
        "nk_type": report.nk_type,
        "dim_m": report.dim_m,
        "splitting": report.splitting,
        "r_eigenvalues": eig(report.r_eigs),
        "ric_eigenvalues": eig(report.ric_eigs),
        "c_eigenvalues": eig(report.c_eigs),
        "einstein": report.einstein,
        "einstein_constant": _frac(report.einstein_constant),
        "mu2": _frac(report.mu2),
        "lk_ratio": _frac(report.lk_ratio),
        "lk_label": report.lk_label,
        "kahler": report.kahler,
        "notes": report.notes,
    }


def _fibration_json(rep) -> dict:
    return {
        "vertical": rep.vertical_label,
        "g_v": [list(c) for c in rep.g_v_type.components],
        "g_v_dim": rep.g_v_dim,
        "gbar_v": [list(c) for c in rep.gbar_v_type.components],
        "gbar_torus": rep.gbar_v_type.torus_rank,
        "gbar_v_dim": rep.gbar_v_dim,
        "fiber_dim": rep.fiber_dim,
        "base_dim": rep.base_dim,
        "involution_h": [[n, tables.frac_json(c)] for n, c in rep.involution_h],
        "base_hermitian": rep.base_hermitian,
        "note": rep.note,
    }


# -- classify ----------------------------------------------------------------


def cmd_classify(args) -> int:
    rs = cached_root_system(args.family, args.rank)
    entries = []
    for cls in enumerate_inner_order3(rs, dedup=args.dedup):
        entries.append({
            "kind": cls.kind,
            "nodes": list(cls.nodes),
            "h": cls.describe(),
            "nk_type": _CLASSIFY_NK[cls.kind],
            "space": tables.space_name(args.family, args.rank, cls.kind, cls.nodes),
        })
    if (args.family, args.rank) == ("d", 4):
        entries.append({"kind": "B3", "nodes": [], "h": "diagram rotation",
                        "nk_type": "I or II", "space": "Spin(8)/G2 (rotation fixed points)"})
    doc = {"schema_version": SCHEMA_VERSION, "algebra": rs.type_label,
           "marks": list(rs.marks), "classes": entries}
    if args.json:
        print(json.dumps(doc, indent=1, sort_keys=True))
    else:
        print(f"{rs.type_label}: marks {rs.marks}")
        for e in entries:
            print(f"  {e['kind']:<5} nodes {str(e['nodes']):<8} NK type {e['nk_type']:<28}"
                  f" {e['space']}")
    return 0


# -- analyze -----------------------------------------------------------------


def _realize_from_args(args):
    if args.triality:
        return realize_triality_d4(cached_algebra(args.family, args.rank))
    if args.cyclic:
        return realize_cyclic_c3(cached_algebra(args.family, args.rank))
    try:
        nodes = tuple(int(t) for t in args.nodes.split(","))
    except ValueError:
        raise InvalidRank(f"--nodes expects integers, got {args.nodes!r}")
    rs = cached_root_system(args.family, args.rank)
    if not nodes or len(nodes) > 2 or any(not 1 <= n <= rs.rank for n in nodes):
        raise InvalidRank(f"--nodes must name one or two of 1..{rs.rank}")
    marks = [rs.marks[n - 1] for n in nodes]
    if len(nodes) == 2:
        if marks != [1, 1] or nodes[0] == nodes[1]:
            raise InvalidRank("a node pair needs two distinct mark-1 nodes")
        kind = "A3II"
    else:
        kind = {1: "A3I", 2: "A3III", 3: "A3IV"}[marks[0]]
    return tables.realize(args.family, args.rank, kind, nodes)


def cmd_analyze(args) -> int:
    space = _realize_from_args(args)
    report = build_report(space)
    fibs = []
    verification: dict[str, float] = {}
    if not report.kahler:
        verification.update(verify_structure_identities(space, tol=args.tol))
        verification.update(verify_curvature_identities(space, tol=args.tol,
                                                        seed=args.seed))
        verification["ricci_oracle"] = verify_ricci_oracle(space, tol=args.tol)
        verify_prop_table_relations(report)
        verification["eigenvalue_table_relations"] = 0.0
        if report.nk_type in ("III", "IV"):
            verification["min_connection_identity"] = \
                verify_min_connection_identity(space, tol=args.tol, seed=args.seed)
            verification.update(verify_sat_identities(space, tol=args.tol,
                                                      seed=args.seed))
            fibs = all_fibrations(space)
        einstein_check(report)
    ok = all(v <= args.tol for v in verification.values())
    doc = {
        "schema_version": SCHEMA_VERSION,
        "space": {"family": args.family, "rank": args.rank,
                  "construction": ("triality" if args.triality else
                                   "cyclic" if args.cyclic else "inner"),
                  "name": space.name},
        "nk_report": _report_json(report),
        "fibrations": [_fibration_json(f) for f in fibs],
        "verification": {"tolerance": args.tol, "pass": ok,
                         "residuals": verification},
    }
    if args.json:
        print(json.dumps(doc, indent=1, sort_keys=True))
    else:
        _print_analysis(doc)
    return 0 if ok else 1


def _print_analysis(doc: dict) -> None:
    rep = doc["nk_report"]
    print(f"{rep['name']}  [{rep['algebra']}; {rep['automorphism']}]")
    if rep["kahler"]:
        print("  Kahler (Hermitian symmetric); torsion vanishes")
        return
    print(f"  NK type {rep['nk_type']}   dim m = {rep['dim_m']}   "
          f"splitting {rep['splitting']}")

    def fmt(e):
        v = Fraction(e["value"]["num"], e["value"]["den"])
        return f"{e['layer']}: {v} kappa (dim {e['dim']})"

    print("  r   : " + ";  ".join(fmt(e) for e in rep["r_eigenvalues"]))
    print("  Ric : " + ";  ".join(fmt(e) for e in rep["ric_eigenvalues"]))
    print("  C   : " + ";  ".join(fmt(e) for e in rep["c_eigenvalues"]))
    star = "Einstein" if rep["einstein"] else "not Einstein"
    print(f"  {star}" + (f", l/k = {Fraction(rep['lk_ratio']['num'], rep['lk_ratio']['den'])}"
                         if rep["lk_ratio"] else ""))
    for fib in doc["fibrations"]:
        gv = "+".join(f"{f}{r}" for f, r in fib["g_v"])
        gbar = "+".join(f"{f}{r}" for f, r in fib["gbar_v"])
        if fib["gbar_torus"]:
            gbar += f"+T^{fib['gbar_torus']}"
        print(f"  fibration {fib['vertical']}: g_V = {gv}, gbar_V = {gbar}, "
              f"fiber dim {fib['fiber_dim']}, base dim {fib['base_dim']}, "
              f"{'Hermitian' if fib['base_hermitian'] else 'non-Hermitian'} base")
    worst = max(doc["verification"]["residuals"].values(), default=0.0)
    print(f"  verification: {'pass' if doc['verification']['pass'] else 'FAIL'}"
          f" (worst residual {worst:.2e})")


# -- table -------------------------------------------------------------------


_TABLE_NAMES = {"AI": "table_ai", "AII": "table_aii", "AIII": "table_aiii",
                "AIV": "table_aiv", "BC": "table_bc",
                "FIB-AII": "fibrations_aii", "FIB-AIII": "fibrations_aiii"}


def cmd_table(args) -> int:
    name = _TABLE_NAMES[args.which]
    rows = TABLES[name](deep=args.deep)
    if args.json:
        print(tables.dumps_rows(rows), end="")
    elif args.csv:
        _print_csv(rows)
    else:
        _print_rows(rows)
    try:
        tables.check_table(name, deep=args.deep)
    except TableMismatch as exc:
        print(f"GOLDEN MISMATCH: {exc}", file=sys.stderr)
        return 1
    print(f"# {len(rows)} rows; matches golden data", file=sys.stderr)
    return 0


def _flatten(row: dict) -> dict:
    flat = {}
    for key, val in row.items():
        if isinstance(val, dict) and set(val) == {"num", "den"}:
            flat[key] = str(Fraction(val["num"], val["den"]))
        elif isinstance(val, list) and val and isinstance(val[0], dict) \
                and set(val[0]) == {"num", "den"}:
            flat[key] = ";".join(str(Fraction(v["num"], v["den"])) for v in val)
        elif isinstance(val, list):
            flat[key] = json.dumps(val)
        else:
            flat[key] = val
    return flat


def _print_csv(rows: list[dict]) -> None:
    flat = [_flatten(r) for r in rows]
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=sorted({k for r in flat for k in r}))
    writer.writeheader()
    writer.writerows(flat)
    print(buf.getvalue(), end="")


def _print_rows(rows: list[dict]) -> None:
    flat = [_flatten(r) for r in rows]
    cols = sorted({k for r in flat for k in r})
    widths = {c: max(len(c), *(len(str(r.get(c, ""))) for r in flat)) for c in cols}
    print("  ".join(c.ljust(widths[c]) for c in cols))
    for r in flat:
        print("  ".join(str(r.get(c, "")).ljust(widths[c]) for c in cols))


# -- verify ------------------------------------------------------------------


_JACOBI_DEFAULT = [("a", n) for n in range(1, 5)] + [("b", n) for n in (2, 3, 4)] \
    + [("c", n) for n in (2, 3, 4)] + [("d", 4), ("g", 2), ("f", 4)]
_JACOBI_DEEP = [("a", 8), ("b", 8), ("c", 8), ("d", 8), ("e", 6), ("e", 7)]


def _verify_jacobi(tol: float, deep: bool) -> list[str]:
    failures = []
    for family, rank in _JACOBI_DEFAULT + (_JACOBI_DEEP if deep else []):
        ca = cached_algebra(family, rank)
        res = ca.jacobi_max_residual()
        ratio = ca.trace_form_ratio()
        if res > tol:
            failures.append(f"jacobi:{family}{rank}:residual={res:.3e}")
        if abs(ratio - 2 * ca.dual_coxeter) > 1e-6 * ratio:
            failures.append(f"trace-form:{family}{rank}:{ratio}")
    return failures


def identity_spaces(deep: bool = False):
    """Spaces the identity suites run over."""
    picks = [("b", 3, 2), ("b", 4, 2), ("c", 2, 1), ("c", 3, 1), ("c", 3, 2),
             ("d", 4, 2), ("g", 2, 2), ("f", 4, 1), ("f", 4, 4)]
    if deep:
        picks = tables.a3iii_sweep(deep=True)
    spaces = [tables.realize(f, r, "A3III", (n,)) for f, r, n in picks]
    aii = [("a", 2, (1, 2)), ("a", 3, (1, 3)), ("a", 4, (2, 3)), ("d", 4, (3, 4))]
    if deep:
        aii = tables.a3ii_sweep()
    spaces += [tables.realize(f, r, "A3II", n) for f, r, n in aii]
    spaces.append(tables.realize("g", 2, "A3IV", (1,)))
    spaces.append(realize_triality_d4(cached_algebra("d", 4)))
    spaces.append(realize_cyclic_c3(cached_algebra("a", 1)))
    return spaces


def _verify_identities(tol: float, seed: int, deep: bool) -> list[str]:
    failures = []
    for space in identity_spaces(deep):
        try:
            res = {}
            res.update(verify_structure_identities(space, tol=tol))
            res.update(verify_curvature_identities(space, tol=tol, seed=seed))
            res["ricci_oracle"] = verify_ricci_oracle(space, tol=tol)
            if space.type_label in ("A3II", "A3III"):
                res["min_connection"] = verify_min_connection_identity(
                    space, tol=tol, seed=seed)
                res.update(verify_sat_identities(space, tol=tol, seed=seed))
            report = build_report(space)
            verify_prop_table_relations(report)
            einstein_check(report)
            bad = {k: v for k, v in res.items() if v > tol}
            if bad:
                failures.append(f"identities:{space.name}:{bad}")
        except Exception as exc:  # noqa: BLE001 - aggregated into the exit status
            failures.append(f"identities:{space.name}:{type(exc).__name__}:{exc}")
    return failures


def _verify_tables(deep: bool) -> list[str]:
    failures = []
    names = ["table_ai", "table_aii", "table_aiii", "table_aiv", "table_bc"]
    for name in names:
        try:
            tables.check_table(name, deep=deep)
        except TableMismatch as exc:
            failures.append(f"tables:{name}:{exc.diffs[:3]}")
            continue
        if name != "table_aiii" or deep:  # the e7/e8 rows need --deep
            if not tables.regenerate_matches_bytes(name, deep=True):
                failures.append(f"tables:{name}:serialization drift")
    return failures


def _verify_fibrations(deep: bool) -> list[str]:
    failures = []
    for name in ("fibrations_aii", "fibrations_aiii"):
        try:
            tables.check_table(name, deep=deep)
        except TableMismatch as exc:
            failures.append(f"fibrations:{name}:{exc.diffs[:3]}")
    return failures


def cmd_verify(args) -> int:
    scopes = ["jacobi", "identities", "tables", "fibrations"] \
        if args.scope == "all" else [args.scope]
    failures: list[str] = []
    for scope in scopes:
        if scope == "jacobi":
            failures += _verify_jacobi(args.tol, args.deep)
        elif scope == "identities":
            failures += _verify_identities(args.tol, args.seed, args.deep)
        elif scope == "tables":
            failures += _verify_tables(args.deep)
        elif scope == "fibrations":
            failures += _verify_fibrations(args.deep)
        print(f"verify {scope}: {'ok' if not failures else f'{len(failures)} failures'}")
    if failures:
        print(json.dumps({"failures": failures}, indent=1))
        return 1
    return 0


# -- entry -------------------------------------------------------------------


def _add_common(p):
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--deep", action="store_true",
                   help="include the minutes-scale e7/e8 checks")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nk-triad",
        description="Compact 3-symmetric spaces and their nearly Kahler invariants",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="enumerate order-3 automorphism classes")
    p.add_argument("family", choices=list("abcdefg"))
    p.add_argument("rank", type=int)
    p.add_argument("--dedup", action="store_true",
                   help="collapse diagram-symmetric duplicates")
    _add_common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("analyze", help="full invariant report for one space")
    p.add_argument("family", choices=list("abcdefg"))
    p.add_argument("rank", type=int)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--nodes", help="defining node(s), e.g. 2 or 1,6")
    group.add_argument("--triality", action="store_true")
    group.add_argument("--cyclic", action="store_true",
                       help="analyze (g+g+g)/diagonal for this algebra")
    _add_common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("table", help="regenerate a table and diff against golden")
    p.add_argument("which", choices=sorted(_TABLE_NAMES))
    p.add_argument("--csv", action="store_true")
    _add_common(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="run invariant suites")
    p.add_argument("scope", choices=["all", "jacobi", "identities", "tables",
                                     "fibrations"])
    _add_common(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InvalidRank, NotOrderThree) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
