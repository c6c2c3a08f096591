"""
Tests des ensembles fixes et du lieu singulier.
"""

from functools import lru_cache
from math import gcd

import pytest

from src.algebra.cyclo import root_of_unity
from src.algebra.linalg import intersect_subspaces
from src.algebra.quat import IsometryS3, Quaternion, UnitQuaternion
from src.config import KERNEL_CONFIG
from src.geometry.singular import (
    CircleDescriptor,
    complement_seifert_hint,
    fixed_set,
    is_free_action,
    singular_locus,
)
from src.groups.duval import build, closed_form_order, so4_image
from src.groups.families import BIS_FAMILIES, FAMILY_ORDER, FamilySpec, enumerate_specs
from tests.conftest import built


# ============================================================================
# Ensembles fixes
# ============================================================================

def test_identity_fixes_everything(field8):
    one = UnitQuaternion.one(field8)
    assert fixed_set(IsometryS3(one, one)).kind == "all"


def test_conjugation_fixes_the_complex_circle(field8):
    z = UnitQuaternion(root_of_unity(field8, 1, 8), field8.zero)
    fs = fixed_set(IsometryS3(z, z))
    assert fs.kind == "circle"
    assert fs.circle.contains((field8.one, field8.zero, field8.zero, field8.zero))
    assert fs.circle.contains((field8.zero, field8.one, field8.zero, field8.zero))
    assert not fs.circle.contains((field8.zero, field8.zero, field8.one, field8.zero))


def test_left_multiplication_is_free(field8):
    z = UnitQuaternion(root_of_unity(field8, 1, 8), field8.zero)
    assert fixed_set(IsometryS3(z, UnitQuaternion.one(field8))).kind == "empty"


def test_fixed_set_rejects_reversing(field8):
    one = UnitQuaternion.one(field8)
    with pytest.raises(ValueError):
        fixed_set(IsometryS3(one, one, reversing=True))


def _small_specs():
    specs = []
    for family in ("1", "2", "3", "5", "6", "10", "11", "21", "26pp", "4"):
        specs += enumerate_specs(family, 2, max_r=3)
    return [s for s in specs if closed_form_order(s) <= 96]


@pytest.mark.parametrize("spec", _small_specs(), ids=lambda s: s.label())
def test_fixed_circles_are_really_fixed(spec):
    """Chaque vecteur de base d'un cercle fixe est fixé par l'isométrie."""
    group = build(spec)
    for f in so4_image(group):
        if f.is_identity():
            continue
        fs = fixed_set(f)
        if fs.kind == "circle":
            for row in fs.circle.basis:
                h = Quaternion.from_components(*row)
                assert f.apply(h) == h
        else:
            assert fs.kind == "empty"
            assert f.p.real_part() != f.q.real_part()


# ============================================================================
# Lieu singulier
# ============================================================================

@pytest.mark.parametrize("family, params", [
    ("2", {"m": 1, "n": 3}),
    ("5", {"m": 1}),
    ("9", {"m": 1}),
])
def test_right_multiplication_groups_act_freely(family, params):
    group = built(family, **params)
    assert is_free_action(group)
    assert singular_locus(group).is_empty


def test_cyclic_rotation_gives_one_closed_edge():
    group = built("1", m=1, n=1, r=3, s=1)
    assert not is_free_action(group)
    graph = singular_locus(group)
    assert len(graph.edges) == 1
    edge = graph.edges[0]
    assert edge.index == 3
    assert not edge.arc
    assert edge.orbit_size == 1
    assert graph.vertices == []


def test_conjugation_by_t_star_suspends_the_tetrahedral_orbifold():
    """Famille 21: S³/T par conjugaison, deux sommets tétraédraux en ±1."""
    graph = singular_locus(built("21"))
    assert {e.index for e in graph.edges} == {2, 3}
    assert [v.local for v in graph.vertices] == ["tetra", "tetra"]
    assert all(v.germs == 3 for v in graph.vertices)


def test_graph_json_is_sorted():
    payload = singular_locus(built("1", m=1, n=1, r=3, s=1)).to_json()
    assert payload["edges"][0]["index"] == 3


def test_complement_seifert_hint():
    assert complement_seifert_hint(FamilySpec.create("2bis", m=2, n=3))
    assert complement_seifert_hint(FamilySpec.create("5", m=1))
    assert not complement_seifert_hint(FamilySpec.create("22"))


# ============================================================================
# Échantillonnage exact du lieu singulier
# ============================================================================

def _specs_up_to(order: int, slow_above: int = 48):
    """Groupes d'ordre ≤ order (m, n ≤ 3, r, s ≤ 4), marqués slow au-delà de slow_above."""
    params = []
    for family in FAMILY_ORDER + BIS_FAMILIES:
        for spec in enumerate_specs(family, 3, max_r=4):
            size = closed_form_order(spec)
            if size > order:
                continue
            marks = [pytest.mark.slow] if size > slow_above else []
            params.append(pytest.param(spec, id=spec.label(), marks=marks))
    return params


def _image_circle(f, circle):
    rows = [f.apply(Quaternion.from_components(*b)).components() for b in circle.basis]
    return CircleDescriptor.from_rows(rows)


@lru_cache(maxsize=None)
def _locus(spec):
    """
    (corps, éléments pouvant avoir des points fixes, orbites de cercles par arête).

    p·h = h·q avec h ≠ 0 impose Re(p) = Re(q): les autres éléments n'ont
    aucun point fixe.
    """
    group = build(spec)
    image = so4_image(group)
    candidates = [f for f in image if not f.is_identity() and f.p.real_part() == f.q.real_part()]
    orbits = [
        (edge, {_image_circle(f, edge.circle) for f in image})
        for edge in singular_locus(group).edges
    ]
    return group.field, candidates, orbits


def _plane_coefficients(count: int):
    """count couples (a, b) deux à deux non proportionnels."""
    pairs = []
    bound = 1
    while len(pairs) < count:
        pairs = [(a, b) for a in range(bound + 1) for b in range(-bound, bound + 1)
                 if gcd(a, b) == 1 and (a > 0 or b == 1)]
        bound += 1
    return pairs[:count]


def _fixers(candidates, v):
    h = Quaternion.from_components(*v)
    return frozenset(i for i, f in enumerate(candidates) if f.apply(h) == h)


def test_plane_coefficients_are_pairwise_independent():
    pairs = _plane_coefficients(KERNEL_CONFIG["circle_samples"])
    assert len(pairs) == KERNEL_CONFIG["circle_samples"]
    for i, (a, b) in enumerate(pairs):
        for c, d in pairs[i + 1:]:
            assert a * d - b * c != 0


@pytest.mark.parametrize("spec", _specs_up_to(96))
def test_circle_points_are_fixed_exactly_by_the_pointwise_stabilizer(spec):
    """
    Hors sommets, un point d'un cercle signalé est fixé par exactement
    index − 1 éléments non triviaux, les mêmes sur tout le cercle.
    """
    _, candidates, orbits = _locus(spec)
    circles = set().union(*(orbit for _, orbit in orbits))
    for edge, orbit in orbits:
        for circle in orbit:
            others = [c for c in circles if c != circle]
            stabilizer = None
            for a, b in _plane_coefficients(KERNEL_CONFIG["circle_samples"]):
                v = tuple(x * a + y * b for x, y in zip(*circle.basis))
                # Un autre cercle coupe le plan selon une droite au plus
                if any(c.contains(v) for c in others):
                    continue
                fixers = _fixers(candidates, v)
                assert len(fixers) == edge.index - 1
                if stabilizer is None:
                    stabilizer = fixers
                assert fixers == stabilizer


@pytest.mark.parametrize("spec", _specs_up_to(96))
def test_points_with_nontrivial_stabilizer_lie_on_reported_circles(spec, rng):
    field, candidates, orbits = _locus(spec)
    circles = set().union(*(orbit for _, orbit in orbits))

    for f in candidates:
        fs = fixed_set(f)
        assert fs.kind == "circle"
        assert fs.circle in circles

    points = []
    while len(points) < KERNEL_CONFIG["global_samples"]:
        values = [int(x) for x in rng.integers(-4, 5, size=4)]
        if any(values):
            points.append(tuple(field.from_rational(x) for x in values))
    ordered = sorted(circles, key=lambda c: tuple(x.sort_key() for row in c.basis for x in row))
    for i, a in enumerate(ordered):
        for b in ordered[i + 1:]:
            meet = intersect_subspaces([list(r) for r in a.basis], [list(r) for r in b.basis],
                                       field.zero, field.one)
            points.extend(tuple(v) for v in meet)

    for v in points:
        if _fixers(candidates, v):
            assert any(c.contains(v) for c in circles)
