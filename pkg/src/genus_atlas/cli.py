"""genus-atlas command line.

Exit codes: 0 success, 2 catalog does not cover the genus, 3 malformed
input, 4 inconsistent classification database.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .catalog import Catalog, CatalogError, bundled_catalog_path
from .classify import CoverageError, classify_genus, classify_through, nu_table, plot_csv
from .db import DatabaseError, db_load, db_store
from .filters import IncompleteDatabaseError
from .signatures import candidate_pairs

EXIT_OK = 0
EXIT_COVERAGE = 2
EXIT_MALFORMED = 3
EXIT_DB = 4


def _catalog_path(arg: str | None) -> Path:
    if arg in (None, "bundled"):
        return bundled_catalog_path(extended=False)
    if arg == "extended":
        return bundled_catalog_path(extended=True)
    return Path(arg)


def _cmd_classify(args) -> int:
    catalog = Catalog.load(_catalog_path(args.catalog))
    db = db_load(args.db)
    before = db.dumps()
    try:
        if args.genus is not None:
            results = {args.genus: classify_genus(args.genus, catalog, db, jobs=args.jobs)}
        else:
            results = classify_through(args.max_genus, catalog, db, jobs=args.jobs)
    finally:
        # each genus is committed whole, so finished genera survive a later abort
        if db.dumps() != before:
            db_store(db, args.db)
    for g, recs in results.items():
        print(f"genus {g}: {len(recs)} groups")
        for rec in recs:
            print(f"  {rec.group.order},{rec.group.index} {rec.name} {rec.signature}")
    return EXIT_OK


def _cmd_signatures(args) -> int:
    for pair in candidate_pairs(args.genus, order=args.order):
        print(pair)
    return EXIT_OK


def _cmd_verify(args) -> int:
    report = Catalog.load(_catalog_path(args.catalog)).verify()
    print(report)
    return EXIT_OK if report.ok else EXIT_MALFORMED


def _cmd_nu_table(args) -> int:
    sys.stdout.write(nu_table(db_load(args.db)))
    return EXIT_OK


def _cmd_plot_csv(args) -> int:
    text = plot_csv(db_load(args.db))
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="genus-atlas", description="Classify finite groups by strong symmetric genus.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify one genus, or every genus up to a bound")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--genus", type=int)
    which.add_argument("--max-genus", type=int)
    p.add_argument("--catalog", help="catalog file, or 'bundled' / 'extended' (default: bundled)")
    p.add_argument("--db", required=True, type=Path)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("signatures", help="list candidate (order, signature) pairs")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--order", type=int)
    p.set_defaults(func=_cmd_signatures)

    p = sub.add_parser("verify-catalog", help="consistency-check a catalog file")
    p.add_argument("--catalog")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("nu-table", help="print g,nu(g) for every completed genus")
    p.add_argument("--db", required=True, type=Path)
    p.set_defaults(func=_cmd_nu_table)

    p = sub.add_parser("plot-csv", help="write genus,nu CSV for plotting")
    p.add_argument("--db", required=True, type=Path)
    p.add_argument("--out", required=True, type=Path)
    p.set_defaults(func=_cmd_plot_csv)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if getattr(args, "verbose", False) else logging.WARNING,
        format="%(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except CoverageError as exc:
        print(f"coverage: {exc}", file=sys.stderr)
        return EXIT_COVERAGE
    except (CatalogError, FileNotFoundError, ValueError) as exc:
        if isinstance(exc, DatabaseError):
            print(f"database: {exc}", file=sys.stderr)
            return EXIT_DB
        print(f"input: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except IncompleteDatabaseError as exc:
        print(f"database: {exc}", file=sys.stderr)
        return EXIT_DB


if __name__ == "__main__":
    sys.exit(main())
