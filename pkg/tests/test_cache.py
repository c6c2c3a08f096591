"""
Tests du cache SQLite des constructions et des exécutions.
"""

import pytest

from src.cache.store import SCHEMA_VERSION, GroupCache
from src.config import CACHE_CONFIG
from src.groups.duval import build
from src.groups.families import FamilySpec
from src.reports.runner import ReportRunner


def test_disabled_cache_always_builds(cache_dir):
    cache = GroupCache(cache_dir, enabled=False)
    spec = FamilySpec.create("5", m=1)
    assert cache.build(spec).order == build(spec).order
    assert cache.count() == 0
    assert cache.start_run([1], 2) is None
    assert not (cache_dir / CACHE_CONFIG["database_name"]).exists()


def test_round_trip_rebuilds_the_same_group(cache_dir):
    cache = GroupCache(cache_dir, enabled=True)
    spec = FamilySpec.create("11", m=2, n=3, r=2, s=1)
    first = cache.build(spec)
    assert (cache.hits, cache.misses) == (0, 1)

    fresh = GroupCache(cache_dir, enabled=True)
    second = fresh.build(spec)
    assert (fresh.hits, fresh.misses) == (1, 0)
    assert second.pairs == first.pairs
    assert second.five_tuple.to_json() == first.five_tuple.to_json()
    assert fresh.count() == 1


@pytest.mark.parametrize("command", ["build", "isom", "fibrations", "base", "singular"])
def test_cached_report_matches_fresh_report(cache_dir, command):
    """Rapport identique cache froid, cache chaud et sans cache."""
    spec = FamilySpec.create("11", m=2, n=3, r=2, s=1)
    cold = ReportRunner(GroupCache(cache_dir, enabled=True)).run(command, spec).to_payload()

    warm_cache = GroupCache(cache_dir, enabled=True)
    warm = ReportRunner(warm_cache).run(command, spec).to_payload()
    assert warm_cache.hits == 1

    assert warm == cold
    assert ReportRunner().run(command, spec).to_payload() == cold


def test_key_includes_conductor(cache_dir):
    cache = GroupCache(cache_dir, enabled=True)
    spec = FamilySpec.create("1", m=1, n=1, r=3, s=1)
    cache.build(spec)
    cache.build(spec, conductor_override=24)
    assert cache.count() == 2
    assert cache.build(spec, conductor_override=24).field.conductor == 24
    assert cache.hits == 1


def test_put_twice_is_ignored(cache_dir):
    cache = GroupCache(cache_dir, enabled=True)
    spec = FamilySpec.create("21")
    group = build(spec)
    cache.put(spec, group)
    cache.put(spec, group)
    assert cache.count() == 1


def test_run_records(cache_dir):
    cache = GroupCache(cache_dir, enabled=True)
    run_id = cache.start_run([2, 4], 3)
    cache.add_records(run_id, [
        {"table": 2, "row": "22", "params": {"family": "22"}, "field": "pi0",
         "status": "match", "expected": "D6", "computed": "D6"},
        {"table": 2, "row": "27", "params": {"family": "27"}, "field": "pi0",
         "status": "known-erratum", "expected": "Z3", "computed": "1"},
    ])
    cache.finish_run(run_id, "ok")
    records = cache.run_records(run_id)
    assert [r.status for r in records] == ["match", "known-erratum"]
    assert records[1].row == "27"


def test_schema_metadata(cache_dir):
    cache = GroupCache(cache_dir, enabled=True)
    assert cache.get_metadata("schema") == SCHEMA_VERSION
    cache.set_metadata("note", "a")
    cache.set_metadata("note", "b")
    assert cache.get_metadata("note") == "b"
