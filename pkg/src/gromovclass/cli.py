"""Command-line interface.

Exit status: 0 success, 1 verification mismatch or negative verdict,
2 usage or input error, 70 internal defect.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import traceback

from . import kernels
from .canon import canonical_form, invariant_key
from .catalog import (
    CATALOG_DIR_ENV,
    classify_all,
    identify,
    load,
    pipeline_summary,
    rank_audit,
    save,
    shipped_catalog,
    verify_fixtures,
)
from .core import parse, serialize
from .enumerate import MAX_N, MIN_N, is_allowable
from .errors import (
    CatalogFileError,
    FixtureError,
    GromovError,
    LookupFailure,
    NotAllowable,
    NotDeltaGeneric,
    NotFound,
    NotGeneric,
    UnsupportedN,
    ValidationError,
)
from .fixtures import bundled_fixture, read_fixture
from .genericity import build_problem, realize_metric, solve
from .matrixrep import chain_diagram, invariants, structure_matrix
from .metric import format_metric, read_metric

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_DEFECT = 70

PUBLISHED_COUNTS = {4: 1, 5: 3, 6: 26, 7: 431}


def _emit(args, text: str, payload) -> None:
    if args.json:
        print(json.dumps(payload, indent=1, ensure_ascii=False, default=str))
    else:
        print(text)


def _n_arg(value: str) -> int:
    n = int(value)
    if not MIN_N <= n <= MAX_N:
        raise argparse.ArgumentTypeError(f"n must be between {MIN_N} and {MAX_N}")
    return n


def _catalog_for(n: int, path: str | None):
    if path:
        return load(path)
    return shipped_catalog(n)


# ---------------------------------------------------------------- commands


def cmd_classify(args) -> int:
    cat = classify_all(args.n, workers=args.workers, mode=args.mode)
    out = args.output or f"catalog-n{args.n}.json"
    save(cat, out)
    m = cat.metadata
    payload = {k: m[k] for k in ("raw", "allowable", "canonical", "generic", "mode")}
    payload.update(n=args.n, classes=len(cat), output=out)
    _emit(args, pipeline_summary(cat) + f"\nwritten: {out}", payload)
    return EXIT_OK


def cmd_verify(args) -> int:
    cat = _catalog_for(args.n, args.catalog)
    if args.fixtures:
        fixture = read_fixture(os.path.join(args.fixtures, f"n{args.n}.txt"))
    else:
        fixture = bundled_fixture(args.n)
    smaller = None
    if any(r.heading for _, r in fixture.rows()):
        base = os.path.dirname(args.catalog) if args.catalog else None
        try:
            smaller = {m: shipped_catalog(m, base) for m in range(MIN_N, args.n)}
        except CatalogFileError:
            smaller = None  # computed on demand
    report = verify_fixtures(cat, fixture, smaller)
    payload = {
        "n": args.n,
        "rows": report.rows,
        "matched": report.matched,
        "missing": [x[1] for x in report.missing],
        "extra": [r.canonical for r in report.extra],
        "census": [{"group": g, "computed": c, "printed": p} for g, c, p in report.census],
        "lines": [vars(x) for x in report.lines],
        "ok": report.ok,
    }
    _emit(args, report.render(), payload)
    return EXIT_OK if report.ok else EXIT_MISMATCH


def _describe(s) -> dict:
    key = invariant_key(s)
    inv = invariants(structure_matrix(s), s)
    return {
        "structure": serialize(s),
        "canonical": canonical_form(s).text,
        "type": key.type_label,
        "roles": {"isolated": key.roles[0], "end": key.roles[1], "interior": key.roles[2]},
        "removed_edges": key.removed,
        "rank": key.rank,
        "traces": list(key.traces),
        "irreducible": key.irreducible,
        "irreducible_block": inv.block,
    }


def _describe_text(info: dict) -> list[str]:
    r = info["roles"]
    return [
        f"structure: {info['structure']}",
        f"canonical: {info['canonical']}",
        f"type: {info['type']}",
        f"isolated/end/interior: {r['isolated']}/{r['end']}/{r['interior']}",
        f"removed edges: {info['removed_edges']}   rank: {info['rank']}",
        f"traces tr(G^2..G^n): {' '.join(map(str, info['traces']))}",
        f"irreducible: {'yes' if info['irreducible'] else 'no'} (block {info['irreducible_block']})",
    ]


def cmd_identify(args) -> int:
    d = read_metric(args.metric)
    cat = _catalog_for(d.n, args.catalog)
    try:
        rec = identify(cat, d)
    except NotDeltaGeneric as exc:
        _emit(args, f"not Delta-generic: {exc}", {"generic": False, "reason": str(exc)})
        return EXIT_MISMATCH
    info = _describe(rec.structure)
    info.update(class_id=rec.class_id, label=rec.name)
    lines = [f"class: {rec.class_id} ({rec.name})"] + _describe_text(info)
    if rec.contains:
        lines.append("contains: " + ", ".join(f"{x.label} on {set(x.nodes)}" for x in rec.contains))
    _emit(args, "\n".join(lines), info)
    return EXIT_OK


def cmd_realize(args) -> int:
    s = parse(args.structure)
    try:
        d = realize_metric(s)
    except (NotGeneric, NotAllowable) as exc:
        _emit(args, f"no realization: {exc}", {"generic": False, "reason": str(exc)})
        return EXIT_MISMATCH
    text = format_metric(d)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    _emit(args, text.rstrip("\n"), {"n": d.n, "distances": [[int(x) for x in row] for row in d.d]})
    return EXIT_OK


def cmd_inspect(args) -> int:
    s = parse(args.structure)
    info = _describe(s)
    lines = _describe_text(info)
    lines.append("chains and cycles:")
    lines.extend("  " + x for x in chain_diagram(s).splitlines())
    verdict = is_allowable(s)
    info["allowable"] = bool(verdict)
    info["chain_diagram"] = chain_diagram(s).splitlines()
    if not verdict:
        lines.append(f"not allowable: {verdict.reason}")
        info["reason"] = verdict.reason
    else:
        g = solve(build_problem(s))
        info.update(generic=g.generic, margin=str(g.margin))
        lines.append("allowable: yes")
        lines.append(f"generic: {'yes' if g.generic else 'no'} (optimal margin {g.margin})")
    _emit(args, "\n".join(lines), info)
    return EXIT_OK


def cmd_check_paper(args) -> int:
    rows = []
    audits = []
    ok = True
    for n in range(MIN_N, args.max_n + 1):
        cat = classify_all(n, workers=args.workers)
        want = PUBLISHED_COUNTS.get(n)
        good = want is None or len(cat) == want
        ok &= good
        audit = rank_audit(cat)
        rows.append({"n": n, "classes": len(cat), "published": want, "match": good,
                     "rank_agrees": audit.agreements, "rank_diverges": [list(x) for x in audit.divergences]})
        audits.append(audit.render())
    text = "\n".join(
        f"n={r['n']}: {r['classes']} classes (published {r['published']}) {'ok' if r['match'] else 'MISMATCH'}"
        for r in rows
    )
    text += "\nrank vs removed edges:\n" + "\n".join(audits)
    text += "\nscoreboard: " + " / ".join(str(r["classes"]) for r in rows)
    _emit(args, text, {"rows": rows, "ok": ok})
    return EXIT_OK if ok else EXIT_MISMATCH


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = argparse.ArgumentParser(
        prog="gromovclass",
        description="Classify finite metric spaces by their Gromov product structures.",
        epilog=f"Default catalog directory: ${CATALOG_DIR_ENV}, else the bundled catalogs.",
    )
    p.add_argument("--backend-info", action="store_true", help="print the active kernel backend and exit")
    sub = p.add_subparsers(dest="command", metavar="command")

    c = sub.add_parser("classify", parents=[common], help="build a catalog and print stage counts")
    c.add_argument("--n", type=_n_arg, required=True)
    c.add_argument("--workers", type=int, default=None, help="worker processes (default: all cores)")
    c.add_argument("--mode", choices=("full", "chain-seeded"), default="full")
    c.add_argument("-o", "--output", help="catalog file to write (default catalog-n<N>.json)")
    c.set_defaults(func=cmd_classify)

    v = sub.add_parser("verify", parents=[common], help="compare a catalog with the reference lists")
    v.add_argument("--n", type=_n_arg, required=True)
    v.add_argument("--catalog", help="catalog file (default: catalog directory)")
    v.add_argument("--fixtures", help="directory of n<N>.txt reference files (default: bundled)")
    v.set_defaults(func=cmd_verify)

    i = sub.add_parser("identify", parents=[common], help="find the class of a distance matrix file")
    i.add_argument("metric")
    i.add_argument("--catalog")
    i.set_defaults(func=cmd_identify)

    r = sub.add_parser("realize", parents=[common], help="write a metric realizing a structure")
    r.add_argument("structure")
    r.add_argument("-o", "--output")
    r.set_defaults(func=cmd_realize)

    s = sub.add_parser("inspect", parents=[common], help="invariants and verdicts for a structure")
    s.add_argument("structure")
    s.set_defaults(func=cmd_inspect)

    k = sub.add_parser("check-paper", parents=[common], help="reproduce the published class counts")
    k.add_argument("--max-n", type=_n_arg, default=7)
    k.add_argument("--workers", type=int, default=None)
    k.set_defaults(func=cmd_check_paper)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.backend_info:
        print(f"backend: {kernels.BACKEND} (available: {', '.join(kernels.available_backends())})")
        return EXIT_OK
    if not getattr(args, "func", None):
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (ValidationError, UnsupportedN, FixtureError, CatalogFileError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NotFound, LookupFailure, RuntimeError, GromovError) as exc:
        print(f"internal defect: {type(exc).__name__}: {exc}", file=sys.stderr)
        traceback.print_exc(file=sys.stderr)
        return EXIT_DEFECT


if __name__ == "__main__":
    sys.exit(main())
