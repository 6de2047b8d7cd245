import subprocess
import sys

import pytest

from genus_atlas.catalog import bundled_catalog_path
from genus_atlas.cli import main
from genus_atlas.db import db_load


def test_signatures(capsys):
    assert main(["signatures", "--genus", "2", "--order", "48"]) == 0
    assert capsys.readouterr().out == "48 (0; 2,3,8)\n"


def test_classify_genus2_then_tables(tmp_path, capsys):
    db = tmp_path / "db.jsonl"
    assert main(["classify", "--genus", "2", "--db", str(db)]) == 0
    out = capsys.readouterr().out
    assert out.startswith("genus 2: 6 groups")
    assert "48,29 GL(2,3) (0; 2,3,8)" in out
    assert db_load(db).nu(2) == 6

    assert main(["nu-table", "--db", str(db)]) == 0
    assert capsys.readouterr().out == "g,nu(g)\n2,6\n"
    csv = tmp_path / "nu.csv"
    assert main(["plot-csv", "--db", str(db), "--out", str(csv)]) == 0
    assert csv.read_bytes() == b"genus,nu\n2,6\n"


def test_coverage_abort_exit_code(tmp_path, capsys):
    db = tmp_path / "db.jsonl"
    assert main(["classify", "--max-genus", "3", "--db", str(db)]) == 2
    err = capsys.readouterr().err
    assert "96" in err
    # genus 2 finished before genus 3 aborted, and is kept
    assert db_load(db).complete_through == 2


def test_malformed_catalog_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("#covered-orders: 3\n3 1 C3 3 (1,2,2)\n", encoding="utf-8")
    assert main(["classify", "--genus", "2", "--catalog", str(bad), "--db", str(tmp_path / "db")]) == 3
    assert "line 2" in capsys.readouterr().err
    assert main(["verify-catalog", "--catalog", str(bad)]) == 3


def test_verify_catalog(capsys):
    assert main(["verify-catalog", "--catalog", str(bundled_catalog_path())]) == 0
    assert capsys.readouterr().out.endswith("ok\n")


def test_verify_catalog_violation(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("#covered-orders: 8\n#count:8=1\n8 1 C8 4 (1,2,3,4)\n", encoding="utf-8")
    assert main(["verify-catalog", "--catalog", str(bad)]) == 3
    assert "generators give order 4" in capsys.readouterr().out


@pytest.mark.parametrize("content", ["garbage\n", '{"genus": 2}\n{"complete_through": 2}\n'])
def test_corrupt_db_exit_code(tmp_path, content):
    db = tmp_path / "db.jsonl"
    db.write_text(content, encoding="utf-8")
    assert main(["nu-table", "--db", str(db)]) == 4
    assert main(["classify", "--genus", "2", "--db", str(db)]) == 4


def test_incomplete_db_exit_code(tmp_path):
    assert main(["classify", "--genus", "3", "--catalog", "extended", "--db", str(tmp_path / "db")]) == 4


def test_console_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "genus_atlas", "signatures", "--genus", "2", "--order", "84"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "84 (0; 2,3,7)\n"
