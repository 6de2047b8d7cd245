"""Persistent record of which groups have been classified at which genus.

On disk this is JSON Lines: one object per classified group, then a single
trailer object ``{"complete_through": g}``.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

from .catalog import GroupId
from .perm import Permutation, PermutationError
from .search import Witness
from .signatures import Signature


class DatabaseError(ValueError):
    """Corrupt file or an inconsistent set of records."""


@dataclass(frozen=True)
class GenusRecord:
    genus: int
    group: GroupId
    name: str
    degree: int
    signature: Signature
    witness: Witness

    def to_json(self) -> str:
        return json.dumps({
            "genus": self.genus,
            "order": self.group.order,
            "index": self.group.index,
            "name": self.name,
            "degree": self.degree,
            "signature": {"orbit_genus": self.signature.orbit_genus,
                          "periods": list(self.signature.periods)},
            "witness": {"hyperbolic": [str(p) for p in self.witness.hyperbolic_images],
                        "elliptic": [str(p) for p in self.witness.elliptic_images]},
        }, separators=(",", ":"))

    @classmethod
    def from_dict(cls, obj: dict) -> GenusRecord:
        degree = int(obj["degree"])
        sig = obj["signature"]
        wit = obj["witness"]
        return cls(
            genus=int(obj["genus"]),
            group=GroupId(int(obj["order"]), int(obj["index"])),
            name=str(obj["name"]),
            degree=degree,
            signature=Signature(int(sig["orbit_genus"]), tuple(int(m) for m in sig["periods"])),
            witness=Witness(
                tuple(Permutation.parse(s, degree) for s in wit["hyperbolic"]),
                tuple(Permutation.parse(s, degree) for s in wit["elliptic"]),
            ),
        )


@dataclass
class ClassificationDB:
    records: dict[int, list[GenusRecord]] = field(default_factory=dict)
    # genera 0 and 1 are handled structurally, so an empty db is complete through 1
    complete_through: int = 1

    def __post_init__(self):
        self._genus_of: dict[GroupId, int] = {}
        for g, recs in self.records.items():
            for rec in recs:
                self._index(g, rec)

    def _index(self, g: int, rec: GenusRecord) -> None:
        if rec.genus != g:
            raise DatabaseError(f"{rec.group} filed under genus {g} but records genus {rec.genus}")
        prev = self._genus_of.get(rec.group)
        if prev is not None:
            raise DatabaseError(f"{rec.group} already recorded at genus {prev}")
        self._genus_of[rec.group] = g

    def lookup(self, order: int, index: int) -> int | None:
        return self._genus_of.get(GroupId(order, index))

    def add(self, rec: GenusRecord) -> None:
        self._index(rec.genus, rec)
        self.records.setdefault(rec.genus, []).append(rec)

    def replace_genus(self, g: int, recs: list[GenusRecord]) -> None:
        """Swap in the full result of a genus-g run (all or nothing)."""
        old = self.records.pop(g, [])
        for rec in old:
            del self._genus_of[rec.group]
        added = []
        try:
            for rec in recs:
                self._index(g, rec)
                added.append(rec)
        except DatabaseError:
            for rec in added:
                del self._genus_of[rec.group]
            for rec in old:
                self._genus_of[rec.group] = g
            self.records[g] = old
            raise
        self.records[g] = sorted(recs, key=lambda r: r.group)
        self.complete_through = max(self.complete_through, g)

    def nu(self, g: int) -> int:
        return len(self.records.get(g, []))

    def genera(self) -> list[int]:
        return sorted(self.records)

    def all_records(self) -> list[GenusRecord]:
        return [rec for g in self.genera() for rec in self.records[g]]

    def dumps(self) -> str:
        lines = [rec.to_json() for rec in self.all_records()]
        lines.append(json.dumps({"complete_through": self.complete_through}, separators=(",", ":")))
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> ClassificationDB:
        records: dict[int, list[GenusRecord]] = {}
        complete = None
        for lineno, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            if complete is not None:
                raise DatabaseError(f"line {lineno}: data after the trailer")
            try:
                obj = json.loads(line)
                if "complete_through" in obj:
                    complete = int(obj["complete_through"])
                    continue
                rec = GenusRecord.from_dict(obj)
            except (ValueError, KeyError, TypeError, PermutationError) as exc:
                raise DatabaseError(f"line {lineno}: {exc}") from None
            records.setdefault(rec.genus, []).append(rec)
        if complete is None:
            raise DatabaseError("missing complete_through trailer")
        return cls(records, complete)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ClassificationDB):
            return NotImplemented
        return self.dumps() == other.dumps()


def db_load(path: str | Path) -> ClassificationDB:
    path = Path(path)
    if not path.exists():
        return ClassificationDB()
    return ClassificationDB.loads(path.read_text(encoding="utf-8"))


def db_store(db: ClassificationDB, path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(db.dumps())
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def db_lookup(db: ClassificationDB, gid: tuple[int, int]) -> int | None:
    return db.lookup(*gid)
