"""Table regeneration against golden data, and the command-line surface."""

import json
import shutil
import subprocess
from fractions import Fraction

import pytest

from nk_triad import tables
from nk_triad.cli import main


def test_tables_match_golden_fast():
    for name in ("table_ai", "table_aiv", "table_bc", "table_aii"):
        assert tables.diff_table(name) == []


def test_table_aiii_matches_golden():
    assert tables.diff_table("table_aiii") == []


def test_byte_identical_regeneration():
    assert tables.regenerate_matches_bytes("table_aii")
    assert tables.regenerate_matches_bytes("table_ai")
    assert tables.regenerate_matches_bytes("table_aiv")
    assert tables.regenerate_matches_bytes("table_bc")


def test_printed_lk_deviation_is_the_factor_two():
    rows = tables.load_golden("table_aiii")
    for row in rows:
        printed = row["lk_printed"]
        if row["family"] in ("b", "d"):
            assert printed is not None
            for got, pub in zip(row["lk"], printed):
                assert Fraction(got["num"], got["den"]) == \
                    2 * Fraction(pub["num"], pub["den"])
        else:
            assert printed is None


def test_einstein_lists_match_published_families():
    aii = tables.compute_table_aii()
    assert tables.einstein_computed(aii) == tables.einstein_expected_aii()
    aiii = tables.compute_table_aiii()
    assert tables.einstein_computed(aiii) == tables.einstein_expected_aiii()


def test_golden_dir_override(tmp_path, monkeypatch):
    src = tables.golden_text("table_bc")
    (tmp_path / "table_bc.json").write_text(src, encoding="utf-8")
    monkeypatch.setenv("NK_TRIAD_GOLDEN_DIR", str(tmp_path))
    assert tables.diff_table("table_bc") == []
    broken = json.loads(src)
    broken["rows"][0]["m_dim"] = 99
    (tmp_path / "table_bc.json").write_text(json.dumps(broken), encoding="utf-8")
    assert tables.diff_table("table_bc") != []


def test_space_names():
    assert tables.space_name("a", 5, "A3II", (2, 4)) == "SU(6)/S(U(2)xU(2)xU(2))"
    assert tables.space_name("b", 4, "A3III", (2,)) == "SO(9)/(U(2)xSO(5))"
    assert tables.space_name("c", 2, "A3III", (1,)) == "Sp(2)/(U(1)xSp(1))"
    assert tables.space_name("e", 8, "A3III", (8,)) == "E8/(E7xSO(2))"
    assert tables.space_name("g", 2, "A3IV", (1,)) == "G2/SU(3)"


# -- CLI ------------------------------------------------------------------------


def test_cli_classify(capsys):
    assert main(["classify", "g", "2"]) == 0
    out = capsys.readouterr().out
    assert "A3III" in out and "A3IV" in out and "G2/U(2)" in out


def test_cli_classify_json(capsys):
    assert main(["classify", "a", "1", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["schema_version"].startswith("1.")
    assert [c["kind"] for c in doc["classes"]] == ["A3I"]


def test_cli_classify_dedup(capsys):
    assert main(["classify", "e", "6"]) == 0
    raw = capsys.readouterr().out
    assert raw.count("A3III") == 3          # nodes 2, 3, 5
    assert main(["classify", "e", "6", "--dedup"]) == 0
    out = capsys.readouterr().out
    assert out.count("A3III") == 2          # 3 ~ 5 merge under the flip
    assert out.count("A3I ") == 1


def test_cli_analyze_json_roundtrip(capsys):
    assert main(["analyze", "g", "2", "--nodes", "2", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    rep = doc["nk_report"]
    assert rep["nk_type"] == "IV"
    assert rep["r_eigenvalues"][0]["value"] == {"num": 4, "den": 1}
    assert all(isinstance(e["value"]["num"], int)
               for e in rep["ric_eigenvalues"])
    assert doc["verification"]["pass"] is True
    assert doc["fibrations"][0]["g_v"] == [["a", 1]]
    # serialization carries no floats for the rational payloads
    assert '"value": {' in json.dumps(rep)


def test_cli_analyze_triality(capsys):
    assert main(["analyze", "d", "4", "--triality", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["nk_report"]["nk_type"] == "II"
    assert doc["nk_report"]["splitting"] == {"E": 7, "JE": 7}


def test_cli_table_check(capsys):
    assert main(["table", "AIV", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc["rows"]) == 6


def test_cli_table_csv(capsys):
    assert main(["table", "BC", "--csv"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0].startswith("construction")


def test_cli_usage_error_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["table", "nope"])
    assert exc.value.code == 2
    assert main(["classify", "d", "3"]) == 2  # invalid rank


def test_cli_verify_tables_scope():
    assert main(["verify", "tables"]) == 0


def test_cli_entry_point_installed():
    exe = shutil.which("nk-triad")
    if exe is None:
        pytest.skip("console script not on PATH")
    proc = subprocess.run([exe, "classify", "a", "2"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "A3II" in proc.stdout


def test_identity_spaces_cover_all_constructions():
    from nk_triad.cli import identity_spaces

    labels = {sp.type_label for sp in identity_spaces(deep=False)}
    assert {"A3II", "A3III", "A3IV", "B3", "C3"} <= labels
