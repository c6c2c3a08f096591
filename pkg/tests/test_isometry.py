"""
Tests du groupe d'isométries de S³/G et des isométries renversant l'orientation.
"""

import pytest

from src.algebra.quat import IsometryS3, UnitQuaternion
from src.geometry.isometry import (
    IDENTITY_COMPONENTS,
    full_isom,
    isom_plus,
    or_exists,
    verify_witness,
)
from src.geometry.recognize import Cyclic, Dihedral, same_group
from src.groups.duval import build
from src.reports.expected import ExpectedTables, spec_from_row
from src.reports.runner import check_isom_row, check_or_row
from tests.conftest import built, table_rows


# ============================================================================
# Isom⁺
# ============================================================================

@pytest.mark.parametrize("family, params, isom0, pi0", [
    ("1", {"m": 1, "n": 1, "r": 1, "s": 1}, "PSO4", 1),
    ("1p", {"m": 1, "n": 1, "r": 2, "s": 1}, "SO4", 1),
    ("2", {"m": 1, "n": 3}, "SO3", 2),
    ("7", {"m": 1}, "SO3", 1),
    ("25", {}, "Trivial", 1),
])
def test_isom_plus_small_cases(family, params, isom0, pi0):
    desc = isom_plus(built(family, **params))
    assert desc.identity_component == isom0
    assert desc.identity_component in IDENTITY_COMPONENTS
    assert desc.pi0.order == pi0


def test_isom_plus_of_family_22_is_d6():
    assert same_group(isom_plus(built("22")).pi0, Dihedral(6))


@pytest.mark.parametrize("row", table_rows(2))
def test_generic_isometry_rows(row):
    flags = check_isom_row(row, build(spec_from_row(row)))
    assert all(f.status in ("match", "known-erratum") for f in flags), [f for f in flags if f.status == "mismatch"]


@pytest.mark.parametrize("row", table_rows(3))
def test_small_index_isometry_rows(row):
    flags = check_isom_row(row, build(spec_from_row(row)))
    assert all(f.status in ("match", "known-erratum") for f in flags), [f for f in flags if f.status == "mismatch"]


def test_erratum_rows_are_flagged():
    """Ligne 27: π₀ imprimé ℤ₃, calculé trivial."""
    row = next(r for r in ExpectedTables().rows(2) if r["row"] == "27")
    flags = {f.field: f for f in check_isom_row(row, built("27"))}
    assert flags["pi0"].status == "known-erratum"
    assert flags["pi0"].computed == "1"


# ============================================================================
# Renversement d'orientation
# ============================================================================

def test_different_sides_have_no_reversing_isometry():
    assert not or_exists(built("1", m=1, n=2, r=3, s=1)).exists


def test_witness_is_verified():
    group = built("1", m=2, n=2, r=1, s=1)
    witness = or_exists(group)
    assert witness.exists
    assert witness.witness.reversing
    assert verify_witness(group, witness.witness)


def test_verify_witness_rejects_preserving_maps():
    group = built("21")
    one = UnitQuaternion.one(group.field)
    with pytest.raises(ValueError):
        verify_witness(group, IsometryS3(one, one))


def test_full_isom_doubles_isom_plus():
    group = built("25")
    assert or_exists(group).exists
    assert full_isom(group).pi0 == Cyclic(2)
    assert full_isom(group).identity_component == isom_plus(group).identity_component


@pytest.mark.parametrize("row", table_rows(5))
def test_orientation_reversing_rows(row):
    flags = check_or_row(row, build(spec_from_row(row)))
    assert all(f.status in ("match", "known-erratum", "not-applicable") for f in flags), \
        [f for f in flags if f.status == "mismatch"]
