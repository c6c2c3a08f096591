"""
Tests de la vérification des tables.
"""

import pytest

from src.cache.store import GroupCache
from src.geometry.fibration import signature_from_label
from src.groups.families import FamilySpec, enumerate_specs
from src.reports.expected import (
    ExpectedTables,
    condition_holds,
    evaluate_order_formula,
    flag,
    instantiate_row,
    row_applies,
    spec_from_row,
)
from src.reports.verifier import TableVerifier, evaluate_task


@pytest.fixture
def tables():
    return ExpectedTables()


# ============================================================================
# Formules et statuts
# ============================================================================

@pytest.mark.parametrize("formula, params, value", [
    ("2mnr", {"m": 2, "n": 3, "r": 5}, 60),
    ("mnr/2", {"m": 1, "n": 3, "r": 2}, 3),
    ("288", {}, 288),
    ("120m", {"m": 2}, 240),
])
def test_evaluate_order_formula(formula, params, value):
    assert evaluate_order_formula(formula, params) == value


def test_flag_statuses():
    assert flag("pi0", "Z2", "Z2", True).status == "match"
    assert flag("pi0", "Z3", "1", False).status == "mismatch"
    erratum = flag("isom_p.pi0", "1", "Z2", False, {"isom_p": "order 2"})
    assert erratum.status == "known-erratum"
    assert erratum.note == "order 2"


def test_rows_for_instantiates_parametric_rows(tables):
    rows = tables.rows_for(FamilySpec.create("2bis", m=2, n=3))
    assert [r["base"] for r in rows[4]] == ["RP2(3)"]
    rows = tables.rows_for(FamilySpec.create("2bis", m=3, n=5))
    assert [r["base"] for r in rows[4]] == ["RP2(5)"]
    assert tables.rows_for(FamilySpec.create("2", m=1, n=3), (2,)) == {}
    small = tables.rows_for(FamilySpec.create("2", m=1, n=3), (3,))
    assert [r["case"] for r in small[3]] == ["(C2/C2, D*4n/D*4n)"]


# ============================================================================
# Conditions et gabarits des lignes paramétriques
# ============================================================================

@pytest.mark.parametrize("clause, holds", [
    ("m=n", True),
    ("r>2", True),
    ("r odd", True),
    ("n even", True),
    ("s^2=-1 mod r", True),
    ("s^2=1 mod r", False),
    ("s^2!=1 mod r", True),
    ("s^2=1 mod r|s^2=-1 mod r", True),
    ("s=-1 mod r", False),
    ("m>=3", False),
])
def test_condition_holds(clause, holds):
    spec = FamilySpec.create("1", m=2, n=2, r=5, s=2)
    assert condition_holds(clause, spec) is holds


def test_condition_errors():
    with pytest.raises(ValueError):
        condition_holds("m ~ n", FamilySpec.create("2", m=2, n=3))
    with pytest.raises(ValueError):
        condition_holds("r>2", FamilySpec.create("2", m=2, n=3))
    with pytest.raises(ValueError):
        condition_holds("s^2>1 mod r", FamilySpec.create("1", m=1, n=1, r=3, s=1))


def test_instantiate_row_fills_value_fields_only(tables):
    row = next(r for r in tables.rows(4) if r["row"] == "11" and "case" not in r)
    filled = instantiate_row(row, FamilySpec.create("11", m=2, n=3, r=5, s=2))
    assert filled["base"] == "D2(;15,15)"
    assert filled["errata"] == row["errata"]
    assert "{" in row["base"]


@pytest.mark.parametrize("table", [2, 3, 4, 5])
def test_row_conditions_are_well_formed(tables, table):
    for row in tables.rows(table):
        transcribed = spec_from_row(row)
        assert row_applies(row, transcribed), row
        if "where" not in row:
            continue
        assert all(condition_holds(c, transcribed) for c in row["where"]), row
        for spec in enumerate_specs(row["family"], 4, 5):
            if row_applies(row, spec):
                filled = instantiate_row(row, spec)
                if "base" in filled:
                    assert "{" not in filled["base"]
                    signature_from_label(filled["base"])


# ============================================================================
# Tâches
# ============================================================================

def test_bound_below_two_is_rejected(tables):
    with pytest.raises(ValueError):
        TableVerifier(tables, max_param=1)


def test_order_tasks_cover_the_registry(tables):
    verifier = TableVerifier(tables, max_param=2, max_r=3)
    tasks = verifier.tasks([1])
    families = {t[2] for t in tasks}
    assert {"1", "1p", "20", "22"} <= families
    assert "34" not in families
    assert all(t[0] == 1 for t in tasks)
    assert all(t[3].get("m", 0) <= 2 and t[3].get("r", 0) <= 3 for t in tasks)


def test_tasks_stay_within_max_param(tables):
    tasks = TableVerifier(tables, max_param=2).tasks([2, 3, 4, 5])
    assert tasks
    assert all(t[3].get("m", 0) <= 2 and t[3].get("n", 0) <= 2 for t in tasks)


def _row_params(tasks, table, row_name, key=None):
    return [t[3] for t in tasks if t[0] == table and t[2] == row_name
            and (key is None or key(t[4]))]


def test_generic_row_is_checked_at_every_admissible_spec(tables):
    tasks = TableVerifier(tables, max_param=3, max_r=5).tasks([2])
    assert sorted((p["m"], p["n"]) for p in _row_params(tasks, 2, "2")) == [(2, 3), (3, 3)]
    cyclic = _row_params(tasks, 2, "1")
    assert len(cyclic) == 72
    assert all(p["r"] > 2 for p in cyclic)
    assert {(p["r"], p["s"]) for p in cyclic if p["m"] == p["n"] == 1} == {
        (3, 1), (3, 2), (4, 1), (4, 3), (5, 1), (5, 2), (5, 3), (5, 4),
    }


def test_parity_branches_split_the_enumeration(tables):
    tasks = TableVerifier(tables, max_param=3).tasks([4])
    even = _row_params(tasks, 4, "2bis", lambda row: row.get("branch") == "n even")
    odd = _row_params(tasks, 4, "2bis", lambda row: row.get("branch") == "n odd")
    assert sorted((p["m"], p["n"]) for p in even) == [(2, 2), (3, 2)]
    assert sorted((p["m"], p["n"]) for p in odd) == [(2, 3), (3, 3)]


def test_transcribed_sample_outside_max_r_is_kept(tables):
    tasks = TableVerifier(tables, max_param=2, max_r=5).tasks([5])
    assert {"m": 2, "n": 2, "r": 7, "s": 2} in _row_params(tasks, 5, "1")
    for t in tasks:
        if t[3].get("r", 0) > 5:
            assert t[3] == {k: v for k, v in spec_from_row(t[4]).to_json().items() if k != "family"}


def test_evaluate_task_records_every_field(tables):
    row = next(r for r in tables.rows(2) if r["row"] == "22")
    records = evaluate_task((2, 0, "22", {}, row))
    assert [r["field"] for r in records] == ["isom0", "pi0"]
    assert all(r["status"] == "match" for r in records)


def test_evaluate_task_turns_errors_into_mismatches():
    row = {"row": "5", "family": "5", "params": {"m": 1}, "isom0": "S1"}
    records = evaluate_task((2, 0, "5", {"m": 1}, row))
    assert records[0]["field"] == "error"
    assert records[0]["status"] == "mismatch"
    assert records[0]["computed"].startswith("KeyError")


# ============================================================================
# Exécution et bilan
# ============================================================================

def test_summary_pivot(tables):
    verifier = TableVerifier(tables, max_param=2)
    records = [
        {"table": 2, "row": "22", "params": {}, "field": "pi0", "status": "match",
         "expected": "D6", "computed": "D6", "note": None},
        {"table": 2, "row": "27", "params": {}, "field": "pi0", "status": "known-erratum",
         "expected": "Z3", "computed": "1", "note": "inner automorphisms only"},
        {"table": 5, "row": "10", "params": {"m": 2, "n": 3}, "field": "exists", "status": "mismatch",
         "expected": True, "computed": False, "note": None},
    ]
    summary = verifier.summarize([2, 5], records)
    assert summary.counts == {"known-erratum": 1, "match": 1, "mismatch": 1}
    assert summary.by_table["2"] == {"known-erratum": 1, "match": 1, "mismatch": 0}
    assert summary.errata[0]["note"] == "inner automorphisms only"
    assert not summary.ok
    assert "note" not in summary.mismatches[0]


def test_run_is_recorded_in_the_cache(tables, cache_dir, monkeypatch):
    small = {"2": {"caption": tables.caption(2),
                   "rows": [r for r in tables.rows(2) if r["row"] in ("21", "22")]}}
    monkeypatch.setitem(tables.data, "tables", small)
    cache = GroupCache(cache_dir, enabled=True)
    summary = TableVerifier(tables, cache=cache, max_param=2).run([2])
    assert summary.ok
    assert summary.run_id is not None
    assert len(cache.run_records(summary.run_id)) == 4
    assert cache.count() == 2
