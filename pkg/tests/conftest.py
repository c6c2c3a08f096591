"""
Fixtures communes des tests Orbifold.
"""

from functools import lru_cache

import numpy as np
import pytest

from src.algebra.cyclo import make_field
from src.config import CACHE_CONFIG, KERNEL_CONFIG
from src.groups.duval import ProductGroup, build, closed_form_order
from src.groups.families import FamilySpec
from src.reports.expected import ExpectedTables, spec_from_row


@lru_cache(maxsize=None)
def built(family: str, **params) -> ProductGroup:
    """Construction mémorisée entre les tests (les groupes sont immuables)."""
    return build(FamilySpec.create(family, **params))


@pytest.fixture
def field8():
    return make_field(8)


@pytest.fixture
def field24():
    return make_field(24)


@pytest.fixture
def field40():
    return make_field(40)


@pytest.fixture
def rng():
    """Générateur déterministe pour les oracles par échantillonnage."""
    return np.random.default_rng(KERNEL_CONFIG["random_seed"])


@pytest.fixture
def cache_dir(tmp_path):
    path = tmp_path / "cache"
    path.mkdir()
    return path


@pytest.fixture(autouse=True)
def isolated_env(monkeypatch):
    """Cache désactivé par défaut: aucun test n'écrit dans data/cache."""
    monkeypatch.setitem(CACHE_CONFIG, "enabled", False)


def table_rows(table: int, slow_above: int = 200):
    """Lignes transcrites d'une table, marquées slow au-delà d'un ordre."""
    params = []
    for position, row in enumerate(ExpectedTables().rows(table)):
        spec = spec_from_row(row)
        marks = [pytest.mark.slow] if closed_form_order(spec) > slow_above else []
        ident = f"{position}-{spec.label()}"
        params.append(pytest.param(row, id=ident, marks=marks))
    return params
