import json

import pytest

from genus_atlas.catalog import GroupId
from genus_atlas.classify import classify_genus
from genus_atlas.db import ClassificationDB, DatabaseError, GenusRecord, db_load, db_lookup, db_store
from genus_atlas.search import find_surface_kernel_epi, validate_witness
from genus_atlas.signatures import Signature


@pytest.fixture(scope="module")
def genus2_db(catalog):
    db = ClassificationDB()
    classify_genus(2, catalog, db)
    return db


def q8_record(Q8, genus=2):
    sig = Signature.parse("(0; 4,4,4)")
    return GenusRecord(genus, GroupId(8, 4), "Q8", 8, sig, find_surface_kernel_epi(sig, Q8))


def test_round_trip(tmp_path, genus2_db, catalog):
    path = tmp_path / "db.jsonl"
    db_store(genus2_db, path)
    back = db_load(path)
    assert back == genus2_db
    assert path.read_text(encoding="utf-8") == genus2_db.dumps()
    for rec in back.all_records():
        assert validate_witness(rec.signature, catalog.group(rec.group), rec.witness)


def test_lookup(genus2_db):
    assert db_lookup(genus2_db, (48, 29)) == 2
    assert db_lookup(genus2_db, (48, 1)) is None
    assert db_lookup(ClassificationDB(), (8, 4)) is None


def test_missing_file_is_empty(tmp_path):
    db = db_load(tmp_path / "nothing.jsonl")
    assert db.complete_through == 1 and db.all_records() == []


def test_duplicate_across_genera_rejected(Q8):
    db = ClassificationDB()
    db.replace_genus(2, [q8_record(Q8)])
    with pytest.raises(DatabaseError):
        db.add(q8_record(Q8, genus=3))
    with pytest.raises(DatabaseError):
        db.replace_genus(3, [q8_record(Q8, genus=3)])
    # a failed replace leaves the db as it was
    assert db.lookup(8, 4) == 2 and db.complete_through == 2 and db.nu(3) == 0


def test_replace_genus_is_idempotent(Q8):
    db = ClassificationDB()
    db.replace_genus(2, [q8_record(Q8)])
    text = db.dumps()
    db.replace_genus(2, [q8_record(Q8)])
    assert db.dumps() == text


@pytest.mark.parametrize("text, message", [
    ("", "trailer"),
    ('{"complete_through": 2}\n{"genus": 2}\n', "after the trailer"),
    ('{"genus": 2, "order": 8}\n{"complete_through": 2}\n', "line 1"),
    ("not json\n", "line 1"),
])
def test_corrupt_file(tmp_path, text, message):
    path = tmp_path / "db.jsonl"
    path.write_text(text, encoding="utf-8")
    with pytest.raises(DatabaseError, match=message):
        db_load(path)


def test_bad_witness_permutation_is_corrupt(Q8):
    obj = json.loads(q8_record(Q8).to_json())
    obj["witness"]["elliptic"][0] = "(1,9)"
    with pytest.raises(DatabaseError):
        ClassificationDB.loads(json.dumps(obj) + '\n{"complete_through": 2}\n')


def test_record_json_shape(Q8):
    obj = json.loads(q8_record(Q8).to_json())
    assert set(obj) == {"genus", "order", "index", "name", "degree", "signature", "witness"}
    assert obj["signature"] == {"orbit_genus": 0, "periods": [4, 4, 4]}
    assert len(obj["witness"]["elliptic"]) == 3 and obj["witness"]["hyperbolic"] == []
