"""
Tests des sous-groupes finis de S³.
"""

import pytest

from src.algebra.cyclo import imaginary_unit, make_field, sqrt_half
from src.algebra.quat import UnitQuaternion
from src.exceptions import ClosureCapExceeded, ConductorMismatchError
from src.groups.groups3 import (
    BIN_ICOSA,
    BIN_OCTA,
    BIN_TETRA,
    O2_STAR,
    S3_FULL,
    BinDihedral,
    Cyclic,
    classify,
    closure,
    conjugate_group,
    is_subgroup,
    normalizer_of,
    standard_group,
)


@pytest.mark.parametrize("tag, conductor", [
    (Cyclic(1), 4), (Cyclic(2), 4), (Cyclic(6), 12), (BinDihedral(8), 8),
    (BinDihedral(12), 12), (BIN_TETRA, 8), (BIN_OCTA, 8), (BIN_ICOSA, 20),
])
def test_standard_groups_have_their_order(tag, conductor):
    group = standard_group(tag, make_field(conductor))
    assert group.order == tag.order
    assert classify(group) == tag


def test_standard_groups_are_closed(field8):
    group = standard_group(BIN_OCTA, field8)
    assert all(a * b in group for a in group for b in group)


def test_binary_dihedral_4_is_cyclic(field8):
    j = UnitQuaternion(field8.zero, field8.one)
    assert classify(closure([j], field8)) == Cyclic(4)


def test_closure_cap(field8):
    group = standard_group(BIN_OCTA, field8)
    with pytest.raises(ClosureCapExceeded):
        closure(group.sorted_elements, field8, cap=10)


def test_missing_roots_raise(field8):
    with pytest.raises(ConductorMismatchError):
        standard_group(BIN_ICOSA, field8)


def test_tetra_inside_octa(field8):
    assert is_subgroup(standard_group(BIN_TETRA, field8), standard_group(BIN_OCTA, field8))


def test_conjugation_identifies_d4_with_c4(field8):
    """Conjugaison par (i + j)/√2: j ↦ i, donc D*₄ = {±1, ±j} ↦ C₄."""
    s = sqrt_half(field8)
    h = UnitQuaternion(imaginary_unit(field8) * s, s)
    j = UnitQuaternion(field8.zero, field8.one)
    d4 = closure([j], field8)
    c4 = standard_group(Cyclic(4), field8)
    assert conjugate_group(d4, h) == c4


def test_normalizers(field8):
    assert normalizer_of(Cyclic(1), field8) == S3_FULL
    assert normalizer_of(Cyclic(2), field8) == S3_FULL
    assert normalizer_of(Cyclic(4), field8) == O2_STAR
    assert normalizer_of(BinDihedral(8), field8).group.tag == BIN_OCTA
    assert normalizer_of(BIN_TETRA, field8).group.tag == BIN_OCTA
    f24 = make_field(24)
    assert normalizer_of(BinDihedral(12), f24).group.tag == BinDihedral(24)


def test_normalizer_really_normalizes(field8):
    t = standard_group(BIN_TETRA, field8)
    for x in standard_group(BIN_OCTA, field8):
        assert conjugate_group(t, x) == t


def test_symbolic_intersection(field8):
    octa = normalizer_of(BIN_TETRA, field8)
    both = octa.intersect(O2_STAR)
    assert both.is_finite
    assert all(x.in_o2_star() for x in both.group)
    assert O2_STAR.intersect(S3_FULL) == O2_STAR
