"""Small-groups catalog: a plain-text list of isomorphism types by order.

File layout::

    # free-form comment (provenance, etc.)
    #covered-orders: 1-12,16,20,24
    #count:8=5
    8 4 Q8 8 (1,2,3,4)(5,6,7,8);(1,5,3,7)(2,8,4,6)

Record fields are order, index, name, degree and ``;``-separated generators
in cycle notation.  ``#covered-orders`` is required; ``#count`` lines give the
number of isomorphism types expected for an order.  Completeness itself is
trusted, not proven; ``verify_catalog`` only checks consistency.
"""

from __future__ import annotations

import io
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, NamedTuple, TextIO

from .group import FiniteGroup, generate, prime_factors
from .perm import Permutation, PermutationError

BUNDLED_CATALOG = "small_groups_genus2.txt"
EXTENDED_CATALOG = "small_groups_genus4.txt"

_COUNT_RE = re.compile(r"^#count:\s*(\d+)\s*=\s*(\d+)\s*$")


class CatalogError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class GroupId(NamedTuple):
    order: int
    index: int

    def __str__(self) -> str:
        return f"[{self.order},{self.index}]"


@dataclass(frozen=True)
class CatalogRecord:
    id: GroupId
    name: str
    degree: int
    generators: tuple[Permutation, ...]

    def to_line(self) -> str:
        gens = ";".join(str(g) for g in self.generators)
        return f"{self.id.order} {self.id.index} {self.name} {self.degree} {gens}"


@dataclass
class CatalogManifest:
    covered_orders: frozenset[int]
    expected_counts: dict[int, int] = field(default_factory=dict)
    comments: list[str] = field(default_factory=list)


def parse_ranges(text: str) -> frozenset[int]:
    out: set[int] = set()
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part:
            lo, hi = part.split("-", 1)
            out.update(range(int(lo), int(hi) + 1))
        else:
            out.add(int(part))
    return frozenset(out)


def format_ranges(values: Iterable[int]) -> str:
    vals = sorted(set(values))
    parts = []
    i = 0
    while i < len(vals):
        j = i
        while j + 1 < len(vals) and vals[j + 1] == vals[j] + 1:
            j += 1
        parts.append(str(vals[i]) if i == j else f"{vals[i]}-{vals[j]}")
        i = j + 1
    return ",".join(parts)


def parse_catalog(stream: TextIO | str) -> tuple[CatalogManifest, list[CatalogRecord]]:
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    covered: frozenset[int] | None = None
    counts: dict[int, int] = {}
    comments: list[str] = []
    records: list[CatalogRecord] = []
    seen: set[GroupId] = set()
    for lineno, raw in enumerate(stream, start=1):
        line = raw.rstrip("\n")
        if not line.strip():
            continue
        if line.startswith("#"):
            if line.startswith("#covered-orders:"):
                try:
                    covered = parse_ranges(line.split(":", 1)[1])
                except ValueError:
                    raise CatalogError("bad #covered-orders header", lineno) from None
            elif line.startswith("#count:"):
                m = _COUNT_RE.match(line)
                if not m:
                    raise CatalogError("bad #count header", lineno)
                counts[int(m.group(1))] = int(m.group(2))
            else:
                comments.append(line)
            continue
        fields = line.split()
        if len(fields) != 5:
            raise CatalogError(f"expected 5 fields, got {len(fields)}", lineno)
        try:
            order, index, degree = int(fields[0]), int(fields[1]), int(fields[3])
        except ValueError:
            raise CatalogError("order, index and degree must be integers", lineno) from None
        if order < 1 or index < 1 or degree < 1:
            raise CatalogError("order, index and degree must be positive", lineno)
        gid = GroupId(order, index)
        if gid in seen:
            raise CatalogError(f"duplicate group id {gid}", lineno)
        seen.add(gid)
        try:
            gens = tuple(Permutation.parse(tok, degree) for tok in fields[4].split(";"))
        except PermutationError as exc:
            raise CatalogError(str(exc), lineno) from None
        records.append(CatalogRecord(gid, fields[2], degree, gens))
    if covered is None:
        raise CatalogError("missing #covered-orders header")
    return CatalogManifest(covered, counts, comments), records


def serialize_catalog(manifest: CatalogManifest, records: Iterable[CatalogRecord]) -> str:
    lines = list(manifest.comments)
    lines.append(f"#covered-orders: {format_ranges(manifest.covered_orders)}")
    lines += [f"#count:{n}={c}" for n, c in sorted(manifest.expected_counts.items())]
    lines += [r.to_line() for r in sorted(records, key=lambda r: r.id)]
    return "\n".join(lines) + "\n"


@dataclass
class CatalogReport:
    violations: list[str]
    checked: int

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        head = f"checked {self.checked} records: "
        if self.ok:
            return head + "ok"
        return head + f"{len(self.violations)} violation(s)\n" + "\n".join(
            "  " + v for v in self.violations)


def verify_catalog(manifest: CatalogManifest, records: list[CatalogRecord]) -> CatalogReport:
    violations = []
    per_order: dict[int, list[int]] = {}
    for rec in records:
        n = rec.id.order
        per_order.setdefault(n, []).append(rec.id.index)
        if n not in manifest.covered_orders:
            violations.append(f"{rec.id} {rec.name}: order {n} not in covered orders")
        try:
            got = generate(rec.generators).order
        except Exception as exc:  # a broken record must not stop the report
            violations.append(f"{rec.id} {rec.name}: generation failed ({exc})")
            continue
        if got != n:
            violations.append(f"{rec.id} {rec.name}: generators give order {got}, declared {n}")
    for n, expected in sorted(manifest.expected_counts.items()):
        if n > 1 and prime_factors(n) == [n] and expected != 1:
            violations.append(f"order {n} is prime but expected count is {expected}")
        found = len(per_order.get(n, []))
        if n in manifest.covered_orders and found != expected:
            violations.append(f"order {n}: {found} records, expected {expected}")
    for n in sorted(manifest.covered_orders):
        idx = sorted(per_order.get(n, []))
        if idx != list(range(1, len(idx) + 1)):
            violations.append(f"order {n}: indices are not 1..{len(idx)}")
        if n not in manifest.expected_counts:
            violations.append(f"order {n}: covered but no #count entry")
    return CatalogReport(violations, len(records))


class OrderLookup(NamedTuple):
    records: list[CatalogRecord]
    covered: bool


class Catalog:
    """Parsed catalog with per-order access and memoized concrete groups."""

    def __init__(self, manifest: CatalogManifest, records: list[CatalogRecord]):
        self.manifest = manifest
        self.records = sorted(records, key=lambda r: r.id)
        self._by_id = {r.id: r for r in self.records}
        self._by_order: dict[int, list[CatalogRecord]] = {}
        for r in self.records:
            self._by_order.setdefault(r.id.order, []).append(r)
        self._groups: dict[GroupId, FiniteGroup] = {}

    @classmethod
    def load(cls, path: str | Path) -> Catalog:
        with open(path, encoding="utf-8") as fh:
            return cls(*parse_catalog(fh))

    @classmethod
    def bundled(cls, extended: bool = False) -> Catalog:
        return _bundled(extended)

    @property
    def covered_orders(self) -> frozenset[int]:
        return self.manifest.covered_orders

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def record(self, gid: tuple[int, int]) -> CatalogRecord:
        return self._by_id[GroupId(*gid)]

    def groups_of_order(self, n: int) -> OrderLookup:
        if n not in self.manifest.covered_orders:
            return OrderLookup([], False)
        return OrderLookup(list(self._by_order.get(n, [])), True)

    def group(self, gid: tuple[int, int]) -> FiniteGroup:
        gid = GroupId(*gid)
        if gid not in self._groups:
            self._groups[gid] = generate(self._by_id[gid].generators)
        return self._groups[gid]

    def verify(self) -> CatalogReport:
        return verify_catalog(self.manifest, self.records)

    def dumps(self) -> str:
        return serialize_catalog(self.manifest, self.records)


def groups_of_order(catalog: Catalog, n: int) -> OrderLookup:
    return catalog.groups_of_order(n)


def bundled_catalog_path(extended: bool = False) -> Path:
    name = EXTENDED_CATALOG if extended else BUNDLED_CATALOG
    return Path(str(resources.files("genus_atlas") / "data" / name))


@lru_cache(maxsize=2)
def _bundled(extended: bool) -> Catalog:
    return Catalog.load(bundled_catalog_path(extended))
