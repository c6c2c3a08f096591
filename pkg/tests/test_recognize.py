"""
Tests de la reconnaissance de petits groupes finis.
"""

import pytest

from src.geometry.recognize import (
    D6_WREATH_Z2,
    OCT,
    TRIVIAL,
    Cyclic,
    Dihedral,
    ElemAbelian2,
    Product,
    concrete,
    group_from_label,
    recognize,
    same_group,
    symmetric_group,
)


@pytest.mark.parametrize("label, gid", [
    ("1", TRIVIAL),
    ("Z3", Cyclic(3)),
    ("Z2^2", ElemAbelian2(2)),
    ("D6", Dihedral(6)),
    ("O", OCT),
    ("D6wrZ2", D6_WREATH_Z2),
    ("Z2xD6", Product(Cyclic(2), Dihedral(6))),
])
def test_group_from_label(label, gid):
    assert group_from_label(label) == gid


def test_unknown_label():
    with pytest.raises(ValueError):
        group_from_label("Q8")


def test_product_flattens_and_drops_trivial():
    gid = Product(Cyclic(2), Product(TRIVIAL, Dihedral(6)))
    assert gid.factors == (Cyclic(2), Dihedral(6))
    assert Product(TRIVIAL) == TRIVIAL
    assert gid.order == 12


def test_symmetric_group_is_d6():
    elems, mul = symmetric_group(3)
    assert recognize(elems, mul) == Dihedral(6)


def test_s4_is_octahedral():
    elems, mul = symmetric_group(4)
    assert same_group(recognize(elems, mul), OCT)


@pytest.mark.parametrize("a, b", [
    ("Z2xZ2", "Z2^2"),
    ("Z2xZ3", "Z6"),
    ("D4", "Z2^2"),
    ("Z2xD6", "D12"),
])
def test_same_group_up_to_isomorphism(a, b):
    assert same_group(group_from_label(a), group_from_label(b))


@pytest.mark.parametrize("a, b", [
    ("Z4", "Z2^2"),
    ("D8", "Z2xZ4"),
    ("Z2^3", "D8"),
    ("T", "D12"),
])
def test_different_groups(a, b):
    assert not same_group(group_from_label(a), group_from_label(b))


@pytest.mark.parametrize("label", ["Z8", "Z2^3", "D8", "Z2xD8", "T", "D6wrZ2"])
def test_catalog_recognizes_its_own_models(label):
    gid = group_from_label(label)
    elems, mul = concrete(gid)
    assert len(elems) == gid.order
    assert same_group(recognize(elems, mul), gid)


def test_json_labels():
    assert Cyclic(4).to_json() == {"type": "cyclic", "n": 4}
    assert ElemAbelian2(3).label == "Z2^3"
    assert Product(Cyclic(2), Dihedral(6)).label == "Z2xD6"
