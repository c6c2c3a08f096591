"""
Sous-groupes finis de S³ et de SO(4).
"""

from src.groups.duval import FiveTuple, ProductGroup, build, closed_form_order, group_order, so4_image, tuple_of
from src.groups.families import FAMILIES, FamilySpec, enumerate_specs, required_conductor
from src.groups.groups3 import FinSubgroupS3, GroupTag, classify, closure, standard_group

__all__ = [
    "FAMILIES",
    "FamilySpec",
    "FinSubgroupS3",
    "FiveTuple",
    "GroupTag",
    "ProductGroup",
    "build",
    "classify",
    "closed_form_order",
    "closure",
    "enumerate_specs",
    "group_order",
    "required_conductor",
    "so4_image",
    "standard_group",
    "tuple_of",
]
