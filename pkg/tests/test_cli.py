"""
Tests de la ligne de commande (codes de sortie, JSON).
"""

import json

import pytest

from main import EXIT_INTERNAL, EXIT_INVALID, EXIT_MISMATCH, EXIT_NOT_HOPF, EXIT_OK, main
from src.config import CACHE_CONFIG, EXPECTED_TABLES_PATH


def _run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def _tables_file(tmp_path, edit):
    """Copie modifiée des tables transcrites."""
    with open(EXPECTED_TABLES_PATH, "r", encoding="utf-8") as f:
        data = json.load(f)
    edit(data)
    path = tmp_path / "tables.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


def _row(data, table, name):
    return next(r for r in data["tables"][str(table)]["rows"] if r["row"] == name)


# ============================================================================
# Succès
# ============================================================================

def test_build_outputs_one_json_line(capsys):
    code, out, _ = _run(capsys, "build", "--family", "1", "-m", "1", "-n", "1", "-r", "3", "-s", "1",
                        "--no-cache", "--json")
    assert code == EXIT_OK
    assert out.count("\n") == 1
    payload = json.loads(out)
    assert payload["schema"] == "1"
    assert payload["command"] == "build"
    assert payload["order"] == 6
    assert payload["kernel_ok"] and payload["round_trip_ok"]
    assert payload["spec"]["params"] == {"m": 1, "n": 1, "r": 3, "s": 1}


def test_output_is_deterministic(capsys):
    argv = ("isom", "--family", "22", "--no-cache")
    _, first, _ = _run(capsys, *argv)
    _, second, _ = _run(capsys, *argv)
    assert first == second
    assert json.loads(first)["isom_plus"]["isom0"] == "Trivial"


def test_isom_with_expected_tables(capsys):
    code, out, _ = _run(capsys, "isom", "--family", "22", "--expected", "--no-cache")
    assert code == EXIT_OK
    flags = {f["field"]: f["status"] for f in json.loads(out)["expected"]}
    assert flags["pi0"] == "match"


def test_known_erratum_is_not_a_failure(capsys):
    code, out, _ = _run(capsys, "isom", "--family", "27", "--expected", "--no-cache")
    assert code == EXIT_OK
    statuses = [f["status"] for f in json.loads(out)["expected"]]
    assert "known-erratum" in statuses


def test_base_report(capsys):
    code, out, _ = _run(capsys, "base", "--family", "2bis", "-m", "2", "-n", "3", "--no-cache")
    assert code == EXIT_OK
    assert json.loads(out)["base"]["label"] == "RP2(3)"


def test_singular_report(capsys):
    code, out, _ = _run(capsys, "singular", "--family", "9", "-m", "1", "--no-cache", "--json")
    assert code == EXIT_OK
    singular = json.loads(out)["singular"]
    assert singular["free_action"] is True
    assert singular["edges"] == []


def test_fibrations_report_uses_the_as_key(capsys):
    code, out, _ = _run(capsys, "fibrations", "--family", "13", "-m", "2", "-n", "3", "--no-cache")
    assert code == EXIT_OK
    anti = next(f for f in json.loads(out)["fibrations"] if f["fibration"] == "anti-hopf")
    assert anti["as"] == "13bis"


def test_cache_directory_option(capsys, tmp_path):
    cache = tmp_path / "c"
    code, _, _ = _run(capsys, "build", "--family", "5", "-m", "1", "--cache", str(cache))
    assert code == EXIT_OK
    assert (cache / CACHE_CONFIG["database_name"]).exists()


# ============================================================================
# Erreurs
# ============================================================================

def test_no_command(capsys):
    code, out, err = _run(capsys)
    assert code == EXIT_INTERNAL
    assert out == ""
    assert "usage" in err


def test_constraint_violation(capsys):
    code, out, err = _run(capsys, "build", "--family", "33", "-m", "1", "-n", "2", "--no-cache")
    assert code == EXIT_INVALID
    assert out == ""
    assert "m≠1" in err


def test_conductor_mismatch(capsys):
    code, _, err = _run(capsys, "build", "--family", "9", "-m", "1", "--conductor-override", "8", "--no-cache")
    assert code == EXIT_INVALID
    assert "conductor" in err


def test_not_hopf_preserving(capsys):
    code, out, _ = _run(capsys, "base", "--family", "25", "--no-cache", "--json")
    assert code == EXIT_NOT_HOPF
    payload = json.loads(out)
    assert payload["error"] == "not-hopf-preserving"
    assert payload["fibrations"] == []
    assert payload["schema"] == "1"


def test_expected_mismatch(capsys, tmp_path):
    def edit(data):
        _row(data, 2, "22")["pi0"] = "Z3"
    tables = _tables_file(tmp_path, edit)
    code, out, _ = _run(capsys, "isom", "--family", "22", "--expected", "--tables-file", tables, "--no-cache")
    assert code == EXIT_MISMATCH
    flags = {f["field"]: f for f in json.loads(out)["expected"]}
    assert flags["pi0"]["status"] == "mismatch"
    assert flags["pi0"]["computed"] == "D6"


# ============================================================================
# verify
# ============================================================================

def test_verify_rejects_small_bound(capsys):
    code, _, err = _run(capsys, "verify", "--max-param", "1", "--no-cache")
    assert code == EXIT_INVALID
    assert "max-param" in err


def test_verify_small_table(capsys, tmp_path):
    def edit(data):
        data["tables"]["2"]["rows"] = [_row(data, 2, "21"), _row(data, 2, "27")]
    tables = _tables_file(tmp_path, edit)
    code, out, _ = _run(capsys, "verify", "--tables", "2", "--tables-file", tables, "--no-cache", "--json")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["command"] == "verify"
    assert payload["counts"]["known-erratum"] == 1
    assert payload["errata"][0]["row"] == "27"


def test_verify_reports_mismatches(capsys, tmp_path):
    def edit(data):
        row = _row(data, 2, "21")
        row["isom0"] = "S1"
        data["tables"]["2"]["rows"] = [row]
    tables = _tables_file(tmp_path, edit)
    code, out, _ = _run(capsys, "verify", "--tables", "2", "--tables-file", tables, "--no-cache")
    assert code == EXIT_MISMATCH
    mismatch = json.loads(out)["mismatches"][0]
    assert mismatch["field"] == "isom0"
    assert mismatch["computed"] == "Trivial"


@pytest.mark.slow
def test_verify_order_table_in_parallel(capsys):
    code, out, _ = _run(capsys, "verify", "--tables", "1", "--max-param", "2", "--jobs", "2", "--no-cache")
    assert code == EXIT_OK
    assert json.loads(out)["counts"]["match"] > 0
