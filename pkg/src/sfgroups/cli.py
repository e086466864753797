"""Command-line front end.

Exit codes: 0 success, 2 usage error, 3 budget exhausted, 4 verification mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import linalg
from . import semifield as sfmod
from .census import abelian_census, census_relative
from .classify import (
    CatalogError,
    catalog_index,
    check_supported,
    enumerate_semifields,
    partition_classes,
    read_catalog,
    write_catalog,
)
from .group import SemifieldGroup, group_report
from .reference import LONG_RUN, REPRODUCIBLE, TABLE1

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_MISMATCH = 0, 2, 3, 4


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True) + "\n"


def _emit(text: str, out: str | None, name: str | None = None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    path = Path(out)
    if name is not None:
        path.mkdir(parents=True, exist_ok=True)
        path = path / name
    else:
        path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    print(f"wrote {path}")


def _load(path: str):
    try:
        return sfmod.load(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def parse_kernel(spec: str | None, F) -> linalg.Subspace | None:
    """``dim=k`` (span of the first k basis vectors) or rows like ``1,0,0;0,1,0``."""
    if spec is None:
        return None
    if spec.startswith("dim="):
        try:
            k = int(spec[4:])
        except ValueError as exc:
            raise UsageError(f"bad kernel spec {spec!r}") from exc
        if not 0 <= k < F.n:
            raise UsageError(f"kernel dimension must be in [0, {F.n - 1}]")
        return linalg.subspace_canonical(np.eye(F.n, dtype=np.int64)[:k], F.p, F.n)
    try:
        rows = [[int(x) for x in r.split(",")] for r in spec.split(";") if r.strip()]
    except ValueError as exc:
        raise UsageError(f"bad kernel spec {spec!r}") from exc
    if any(len(r) != F.n for r in rows):
        raise UsageError(f"kernel rows must have length {F.n}")
    N = linalg.subspace_canonical(np.array(rows, dtype=np.int64).reshape(-1, F.n), F.p, F.n)
    if N.dim >= F.n:
        raise UsageError("kernel must be a proper subspace of F")
    return N


# ---------------------------------------------------------------------------


def cmd_enumerate(args) -> int:
    try:
        check_supported(args.p, args.n, args.long_run)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    rep = enumerate_semifields(
        args.p, args.n, budget_secs=args.budget_secs, long_run=args.long_run, workers=args.workers
    )
    idx = catalog_index(rep)
    if args.out:
        path = write_catalog(rep, args.out)
        print(f"wrote {path}")
    print(
        f"order {args.p}^{args.n}: {rep.isotopism_class_count} isotopism classes, "
        f"{rep.iso_or_anti_class_count} classes up to anti-isotopism, "
        f"{rep.commutative_class_count} commutative"
    )
    if not args.out:
        sys.stdout.write(_dump(idx))
    if not rep.complete:
        print("budget exhausted before the search finished", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


def cmd_classify(args) -> int:
    cat = [_load(f) for f in args.files]
    if len({(F.p, F.n) for F in cat}) > 1:
        raise UsageError("all semifields must have the same order")
    iso, merged = partition_classes(cat)
    result = {"files": args.files, "isotopism_classes": iso, "merged_classes": merged}
    code = EXIT_OK
    if args.cross_check:
        iso_e, merged_e = partition_classes(cat, method="exhaustive")
        result["cross_check_agrees"] = iso_e == iso and merged_e == merged
        if not result["cross_check_agrees"]:
            code = EXIT_MISMATCH
    _emit(_dump(result), args.out and str(Path(args.out) / "classes.json"))
    return code


def cmd_group(args) -> int:
    F = _load(args.file)
    G = SemifieldGroup(F, parse_kernel(args.kernel, F))
    report = group_report(G, abelian_census(G, args.method))
    _emit(_dump(report), args.out and str(Path(args.out) / f"{Path(args.file).stem}_group.json"))
    return EXIT_OK if report["checks"]["ses"] else EXIT_MISMATCH


def cmd_census(args) -> int:
    F = _load(args.file)
    G = SemifieldGroup(F, parse_kernel(args.kernel, F))
    c = abelian_census(G, args.method)
    obj = c.to_json_obj()
    obj["members"] = [S.to_list() for S in c.subspaces]
    if c.count >= 2 and G.kernel.dim == 0:
        try:
            obj["relative_counts"] = [census_relative(G, c, i) for i in range(c.count)]
        except ValueError:
            obj["relative_counts"] = None
    _emit(_dump(obj), args.out and str(Path(args.out) / f"{Path(args.file).stem}_census.json"))
    return EXIT_OK


def table1_rows(root: Path | None):
    """One dict per row of the published table: reference cells, plus computed cells where a catalog exists."""
    rows = []
    for ref in TABLE1:
        key = (ref.p, ref.n)
        row = {
            "order": ref.label,
            "reference": [ref.isotopism_classes, ref.groups, ref.commutative],
            "computed": None,
            "status": "reference only",
        }
        if key in REPRODUCIBLE:
            cat = None if root is None else root / f"p{ref.p}_n{ref.n}"
            if cat is not None and (cat / "index.json").exists():
                index, _ = read_catalog(cat)
                got = [index["isotopism_class_count"], index["iso_or_anti_class_count"], index["commutative_class_count"]]
                row["computed"] = got
                if not index["complete"]:
                    row["status"] = "incomplete"
                else:
                    row["status"] = "match" if got == row["reference"] else "MISMATCH"
            else:
                row["status"] = "not computed"
        rows.append(row)
    return rows


def _fmt(v) -> str:
    return "?" if v is None else str(v)


def cmd_table1(args) -> int:
    root = Path(args.out) if args.out else None
    if args.compute:
        if root is None:
            raise UsageError("--compute needs --out")
        for p, n in sorted(REPRODUCIBLE):
            if (p, n) in LONG_RUN and not args.long_run:
                continue
            rep = enumerate_semifields(p, n, budget_secs=args.budget_secs, long_run=args.long_run, workers=args.workers)
            write_catalog(rep, root)
    try:
        rows = table1_rows(root)
    except CatalogError as exc:
        print(f"integrity error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    print(f"{'|F|':>5}  {'iso (ref/got)':>14}  {'G(F) (ref/got)':>15}  {'comm (ref/got)':>15}  status")
    for r in rows:
        ref = r["reference"]
        got = r["computed"] or [None, None, None]
        cells = [f"{_fmt(a)}/{'-' if r['computed'] is None else _fmt(b)}" for a, b in zip(ref, got)]
        print(f"{r['order']:>5}  {cells[0]:>14}  {cells[1]:>15}  {cells[2]:>15}  {r['status']}")
    if root is not None:
        (root).mkdir(parents=True, exist_ok=True)
        (root / "table1.json").write_text(_dump(rows))
    return EXIT_MISMATCH if any(r["status"] == "MISMATCH" for r in rows) else EXIT_OK


def cmd_verify(args) -> int:
    from .acceptance import run_all

    results = run_all(long_run=args.long_run, budget_secs=args.budget_secs or 86_400)
    for r in results:
        print(r.line(), flush=True)
    return EXIT_MISMATCH if any(r.passed is False for r in results) else EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget-secs", type=float, default=None, help="wall-clock budget for searches")
    common.add_argument("--workers", type=int, default=1, help="worker processes for the spread-set search")
    common.add_argument("--long-run", action="store_true", help="allow orders that take hours")
    common.add_argument("--cross-check", action="store_true", help="re-run with the exhaustive isotopy oracle")
    common.add_argument("--out", default=None, help="output directory")

    ap = argparse.ArgumentParser(prog="sfgroups", description="Semifields and their p-groups.")
    sub = ap.add_subparsers(dest="command", required=True)

    e = sub.add_parser("enumerate", parents=[common], help="classify all semifields of order p^n")
    e.add_argument("--p", type=int, required=True)
    e.add_argument("--n", type=int, required=True)
    e.set_defaults(func=cmd_enumerate)

    c = sub.add_parser("classify", parents=[common], help="partition semifield files into classes")
    c.add_argument("files", nargs="+")
    c.set_defaults(func=cmd_classify)

    for name, func, helptext in [
        ("group", cmd_group, "group report for G(F) or a central quotient"),
        ("census", cmd_census, "maximal-order abelian subgroups"),
    ]:
        g = sub.add_parser(name, parents=[common], help=helptext)
        g.add_argument("file")
        g.add_argument("--kernel", default=None, help="central kernel: dim=k or rows '1,0,0;0,1,0'")
        g.add_argument("--method", default="auto", choices=["auto", "enumerate", "graph"])
        g.set_defaults(func=func)

    t = sub.add_parser("table1", parents=[common], help="computed counts next to the published table")
    t.add_argument("--compute", action="store_true", help="enumerate the reproducible rows into --out first")
    t.set_defaults(func=cmd_table1)

    v = sub.add_parser("verify-paper", parents=[common], help="run every acceptance criterion")
    v.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.budget_secs is not None and args.budget_secs <= 0:
        print("error: --budget-secs must be positive", file=sys.stderr)
        return EXIT_USAGE
    if args.workers < 1:
        print("error: --workers must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except sfmod.SemifieldFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
