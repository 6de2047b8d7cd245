"""Per-genus classification pipeline.

For a target genus g: enumerate (order, signature) candidates, fetch every
catalog group of each order, discard pairs the filters rule out, search for
a surface kernel epimorphism, and keep the groups that do not already act on
a surface of genus 0 or 1 or of any smaller genus >= 2.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .catalog import Catalog, CatalogRecord, GroupId
from .db import ClassificationDB, DatabaseError, GenusRecord
from .filters import IncompleteDatabaseError, run_filters
from .group import FiniteGroup, abelian_invariants, generate, recognize_genus_zero
from .search import find_surface_kernel_epi, validate_witness
from .signatures import EUCLIDEAN_SIGNATURES, CandidatePair, Signature, candidate_pairs, rh_genus

log = logging.getLogger(__name__)


class CoverageError(RuntimeError):
    def __init__(self, genus: int, missing: list[int], short: dict[int, tuple[int, int]]):
        self.genus = genus
        self.missing = missing
        self.short = short
        parts = []
        if missing:
            parts.append("orders not covered by the catalog: " + ", ".join(map(str, missing)))
        for n, (have, want) in sorted(short.items()):
            parts.append(f"order {n}: {have} of {want} groups present")
        super().__init__(f"cannot classify genus {genus}; " + "; ".join(parts))


def has_genus_zero(G: FiniteGroup) -> bool:
    return recognize_genus_zero(G)


def has_genus_one(G: FiniteGroup) -> bool:
    """Is G a smooth quotient of one of the five Euclidean signature groups?"""
    for sig in EUCLIDEAN_SIGNATURES:
        if sig.orbit_genus == 1:
            # the torus group is Z^2: G must be abelian on two generators
            if G.is_abelian and len(abelian_invariants(G).factors) <= 2:
                return True
        elif find_surface_kernel_epi(sig, G) is not None:
            return True
    return False


def check_coverage(g: int, catalog: Catalog, pairs: list[CandidatePair] | None = None) -> None:
    pairs = candidate_pairs(g) if pairs is None else pairs
    needed = sorted({p.order for p in pairs})
    missing = [n for n in needed if n not in catalog.covered_orders]
    short = {}
    for n in needed:
        want = catalog.manifest.expected_counts.get(n)
        have = len(catalog.groups_of_order(n).records)
        if n not in missing and want is not None and have != want:
            short[n] = (have, want)
    if missing or short:
        raise CoverageError(g, missing, short)


@dataclass
class _GroupResult:
    group: GroupId
    record: GenusRecord | None
    rejections: list[str]


def _classify_group(rec: CatalogRecord, sigs: list[Signature], g: int,
                    db: ClassificationDB) -> _GroupResult:
    G = generate(rec.generators)
    rejections = []
    found = None
    for sig in sigs:
        pair = CandidatePair(rec.id.order, sig, g)
        verdict = run_filters(pair, G, db, rec.id)
        if not verdict:
            rejections.append(f"REJECT {rec.id.order},{rec.id.index} {sig} {verdict.reason}")
            continue
        w = find_surface_kernel_epi(sig, G)
        if w is not None:
            assert validate_witness(sig, G, w), (rec.id, sig)
            found = (sig, w)
            break
    if found is None or has_genus_zero(G) or has_genus_one(G):
        return _GroupResult(rec.id, None, rejections)
    sig, w = found
    return _GroupResult(rec.id, GenusRecord(g, rec.id, rec.name, rec.degree, sig, w), rejections)


def classify_genus(g: int, catalog: Catalog, db: ClassificationDB, jobs: int = 1) -> list[GenusRecord]:
    """Classify genus g and store the result in db (replacing any earlier run)."""
    if g < 2:
        raise ValueError("genus must be at least 2")
    if db.complete_through < g - 1:
        raise IncompleteDatabaseError(
            f"database is complete through genus {db.complete_through}; run genus {db.complete_through + 1} first")
    pairs = candidate_pairs(g)
    check_coverage(g, catalog, pairs)

    sigs_by_order: dict[int, list[Signature]] = {}
    for p in pairs:
        sigs_by_order.setdefault(p.order, []).append(p.signature)
    tasks = [(rec, sigs)
             for n, sigs in sigs_by_order.items()
             for rec in catalog.groups_of_order(n).records]
    log.info("genus %d: %d candidate pairs over %d groups", g, len(pairs), len(tasks))

    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_classify_group, rec, sigs, g, db) for rec, sigs in tasks]
            results = [f.result() for f in futures]
    else:
        results = [_classify_group(rec, sigs, g, db) for rec, sigs in tasks]

    results.sort(key=lambda r: r.group)
    records = []
    for res in results:
        for line in res.rejections:
            log.debug(line)
        if res.record is not None:
            records.append(res.record)
            log.info("genus %d: %s %s via %s", g, res.group, res.record.name, res.record.signature)
    for rec in records:
        if rh_genus(rec.signature, rec.group.order) != g:
            raise DatabaseError(f"{rec.group}: signature {rec.signature} does not give genus {g}")
    db.replace_genus(g, records)
    return records


def classify_through(max_genus: int, catalog: Catalog, db: ClassificationDB,
                     jobs: int = 1) -> dict[int, list[GenusRecord]]:
    """Run genera complete_through+1 .. max_genus in order."""
    out = {}
    for g in range(max(2, db.complete_through + 1), max_genus + 1):
        out[g] = classify_genus(g, catalog, db, jobs=jobs)
    return out


def revalidate(db: ClassificationDB, catalog: Catalog) -> list[str]:
    """Re-check every stored witness against its catalog group."""
    problems = []
    for rec in db.all_records():
        G = catalog.group(rec.group)
        if rh_genus(rec.signature, rec.group.order) != rec.genus:
            problems.append(f"{rec.group}: Riemann-Hurwitz gives {rh_genus(rec.signature, rec.group.order)}")
        if not validate_witness(rec.signature, G, rec.witness):
            problems.append(f"{rec.group}: witness for {rec.signature} does not validate")
    return problems


def nu_values(db: ClassificationDB) -> list[tuple[int, int]]:
    return [(g, db.nu(g)) for g in range(2, db.complete_through + 1)]


def nu_table(db: ClassificationDB) -> str:
    return "".join(f"{g},{nu}\n" for g, nu in [("g", "nu(g)")] + nu_values(db))


def plot_csv(db: ClassificationDB) -> str:
    return "".join(f"{g},{nu}\n" for g, nu in [("genus", "nu")] + nu_values(db))
