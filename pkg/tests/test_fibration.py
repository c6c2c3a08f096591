"""
Tests des fibrations standard, de l'orbifold de base et de l'action sur la base.
"""

import re
from fractions import Fraction

import pytest

from src.algebra.quat import Quaternion, UnitQuaternion
from src.exceptions import NotHopfPreservingError
from src.geometry.coincidences import COINCIDENCES
from src.geometry.fibration import (
    ANTI_HOPF,
    HOPF,
    Signature2D,
    StandardFibration,
    base_orbifold,
    euler_characteristic,
    fibration_isometries,
    hopf_projection,
    induced_o3_action,
    list_fibrations,
    o3_image,
    preserves_fibration,
    signature_from_label,
)
from src.groups.duval import build, closed_form_order
from src.groups.families import BIS_FAMILIES, FAMILIES, FAMILY_ORDER, FamilySpec, enumerate_specs
from src.reports.expected import ExpectedTables, spec_from_row
from src.reports.runner import check_base_row, check_fibration_row
from tests.conftest import built, table_rows


# ============================================================================
# Signatures
# ============================================================================

@pytest.mark.parametrize("label, sig", [
    ("S2", Signature2D("S2")),
    ("S2(3,2,2)", Signature2D("S2", (2, 2, 3))),
    ("D2(2;3)", Signature2D("D2", (2,), (3,))),
    ("D2(;2,2,4)", Signature2D("D2", (), (2, 2, 4))),
    ("RP2(3)", Signature2D("RP2", (3,))),
])
def test_signature_from_label(label, sig):
    assert signature_from_label(label) == sig


def test_signature_label_round_trip():
    for label in ("S2(2,3,5)", "D2(3;2)", "D2(;2,3,4)", "RP2", "D2(4;)"):
        assert signature_from_label(label).label == label


def test_corners_need_a_disk():
    with pytest.raises(ValueError):
        Signature2D("S2", (2,), (2,))


def test_euler_characteristic():
    assert euler_characteristic(signature_from_label("S2(2,3,5)")) == Fraction(1, 30)
    assert euler_characteristic(signature_from_label("D2(;2,3,4)")) == Fraction(1, 48)
    assert euler_characteristic(signature_from_label("RP2")) == 1


# ============================================================================
# Fibrations préservées
# ============================================================================

def test_fibration_names():
    assert HOPF.name == "hopf"
    assert ANTI_HOPF.name == "anti-hopf"
    assert StandardFibration(2, 3).name == "z1^2/z2^3"
    with pytest.raises(ValueError):
        StandardFibration(2, 4)


def test_family_1_preserves_every_standard_fibration():
    fibs = list_fibrations(FamilySpec.create("1", m=1, n=2, r=3, s=1))
    names = [f["fibration"] for f in fibs]
    assert "hopf" in names and "anti-hopf" in names
    general = next(f for f in fibs if "sample" in f)
    assert "z1^2/z2^3" in general["sample"]


def test_family_25_preserves_no_standard_fibration():
    group = built("25")
    assert not preserves_fibration(group, HOPF)
    with pytest.raises(NotHopfPreservingError) as exc:
        base_orbifold(group.spec, group)
    assert exc.value.preserved == []


def test_bis_family_is_reported_through_anti_hopf():
    fibs = list_fibrations(FamilySpec.create("13", m=2, n=3))
    anti = next(f for f in fibs if f["fibration"] == "anti-hopf")
    assert anti["as"] == "13bis"


@pytest.mark.parametrize("row", ExpectedTables().fibration_rows(), ids=lambda r: r["family"])
def test_fibration_rows(row):
    spec = spec_from_row(row)
    flags = check_fibration_row(row, spec, build(spec))
    assert all(f.status == "match" for f in flags), flags


def test_coincidences_are_listed():
    fibs = list_fibrations(FamilySpec.create("2", m=2, n=3))
    extra = [f for f in fibs if f["source"] == "coincidence"]
    assert [f["fibration"] for f in extra] == ["(D*4/D*4, D*4n/D*4n)"]
    assert extra[0]["note"] == "cas m=1 de 10, 3 fibrations"


_PARTNER_ROW = re.compile(r"^(\w+)(?:\((.*)\))?$")
_PARTNER_DU_VAL = re.compile(r"^\(([\w*]+/[\w*]+), ([\w*]+/[\w*]+)\)(_f)?$")


@pytest.mark.parametrize("coincidence", COINCIDENCES, ids=lambda c: f"{c.family}-{c.partner}")
def test_coincidence_entries_name_valid_specs(coincidence):
    """La condition est satisfiable, le partenaire est une ligne valide ou un groupe de Du Val."""
    assert any(coincidence.matches(s) for s in enumerate_specs(coincidence.family, 4, max_r=5))

    if coincidence.partner.startswith("("):
        assert _PARTNER_DU_VAL.match(coincidence.partner)
        return
    match = _PARTNER_ROW.match(coincidence.partner)
    assert match
    family, args = match.groups()
    assert family in FAMILIES
    params = {}
    for item in (args.split(",") if args else []):
        name, value = item.strip().split("=")
        assert name in FAMILIES[family].params
        params[name] = int(value)
    assert any(
        all(getattr(s, k) == v for k, v in params.items())
        for s in enumerate_specs(family, 4, max_r=5)
    )


def test_coincidence_conditions_use_family_parameters():
    for c in COINCIDENCES:
        assert set(c.condition) <= set(FAMILIES[c.family].params)


# ============================================================================
# Orbifold de base
# ============================================================================

@pytest.mark.parametrize("family, params", [
    ("1", {"m": 1, "n": 2, "r": 3, "s": 1}),
    ("2", {"m": 2, "n": 3}),
    ("2bis", {"m": 2, "n": 3}),
    ("5", {"m": 2}),
    ("10", {"m": 3, "n": 3}),
    ("11", {"m": 1, "n": 1, "r": 3, "s": 1}),
    ("34bis", {"m": 3, "n": 5}),
])
def test_base_euler_characteristic(family, params):
    """χ(base) = 2 / |Γ|, Γ l'image de G̃ dans O(3)."""
    group = built(family, **params)
    gamma = induced_o3_action(group)
    one = UnitQuaternion.one(group.field)
    kernel = sum(1 for l, r in group.pairs if l.in_circle() and r in (one, -one))
    assert len(gamma) * kernel == group.order
    assert euler_characteristic(base_orbifold(group.spec, group)) == Fraction(2, len(gamma))


def test_isom_f_is_circle_for_hopf_families():
    result = fibration_isometries(FamilySpec.create("5", m=2), built("5", m=2))
    assert result.isom_f.identity_component == "S1"
    assert result.base_action.identity_component == "Trivial"


@pytest.mark.parametrize("row", table_rows(4, slow_above=100))
def test_base_rows(row):
    spec = spec_from_row(row)
    flags = check_base_row(row, spec, build(spec))
    assert closed_form_order(spec) > 0
    assert all(f.status in ("match", "known-erratum") for f in flags), [f for f in flags if f.status == "mismatch"]


# ============================================================================
# Équivariance de la projection de Hopf
# ============================================================================

def _specs_up_to(order: int, slow_above: int = 48):
    params = []
    for family in FAMILY_ORDER + BIS_FAMILIES:
        for spec in enumerate_specs(family, 2, max_r=3):
            size = closed_form_order(spec)
            if size <= order:
                marks = [pytest.mark.slow] if size > slow_above else []
                params.append(pytest.param(spec, id=spec.label(), marks=marks))
    return params


@pytest.mark.parametrize("spec", _specs_up_to(96))
def test_hopf_projection_is_equivariant(spec, rng):
    """π(l h r̄) = o3_image(l, r) · π(h) pour tout (l, r) ∈ G̃."""
    group = build(spec)
    if not preserves_fibration(group, HOPF):
        with pytest.raises(NotHopfPreservingError):
            induced_o3_action(group)
        return
    field = group.field
    points = []
    while len(points) < 20:
        values = [int(x) for x in rng.integers(-4, 5, size=4)]
        if any(values):
            points.append(Quaternion.from_components(*(field.from_rational(x) for x in values)))
    for l, r in group.pairs:
        action = o3_image(l, r)
        for h in points:
            assert hopf_projection(l * h * r.conj()) == action.apply(hopf_projection(h))


@pytest.mark.parametrize("spec", _specs_up_to(200))
def test_induced_o3_action_is_a_homomorphism(spec):
    group = build(spec)
    if not preserves_fibration(group, HOPF):
        with pytest.raises(NotHopfPreservingError):
            induced_o3_action(group)
        return
    pairs = list(group.pairs)
    image = set(induced_o3_action(group))
    for l1, r1 in pairs:
        a = o3_image(l1, r1)
        assert a in image
        for l2, r2 in pairs:
            assert o3_image(l1 * l2, r1 * r2) == a.compose(o3_image(l2, r2))
