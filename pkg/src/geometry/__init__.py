"""
Géométrie des orbifolds S³/G: isométries, fibrations, lieu singulier.
"""

from src.geometry.fibration import (
    ANTI_HOPF,
    HOPF,
    O3Element,
    Signature2D,
    StandardFibration,
    base_action,
    base_orbifold,
    euler_characteristic,
    induced_o3_action,
    isom_f,
    isom_p,
    list_fibrations,
    preserves_fibration,
    quotient_signature,
)
from src.geometry.isometry import LieDescriptor, ORWitness, full_isom, isom_plus, or_exists, verify_witness
from src.geometry.recognize import FiniteGroupId, group_from_label, recognize, same_group
from src.geometry.singular import complement_seifert_hint, fixed_set, is_free_action, singular_locus

__all__ = [
    "ANTI_HOPF",
    "FiniteGroupId",
    "HOPF",
    "LieDescriptor",
    "O3Element",
    "ORWitness",
    "Signature2D",
    "StandardFibration",
    "base_action",
    "base_orbifold",
    "complement_seifert_hint",
    "euler_characteristic",
    "fixed_set",
    "full_isom",
    "group_from_label",
    "induced_o3_action",
    "is_free_action",
    "isom_f",
    "isom_p",
    "isom_plus",
    "list_fibrations",
    "or_exists",
    "preserves_fibration",
    "quotient_signature",
    "recognize",
    "same_group",
    "singular_locus",
    "verify_witness",
]
