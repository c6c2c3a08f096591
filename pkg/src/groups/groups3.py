"""
Sous-groupes finis de S³: construction, clôture, reconnaissance, normalisateurs.

Ce module fournit:
1. FinSubgroupS3: ensemble fini d'UnitQuaternion canoniques, fermé
2. GroupTag: Cₙ, D*₂ₙ, T*, O*, I*
3. standard_group / closure / classify
4. SymbolicSubgroup: Finite, O(2)* = S¹ ∪ S¹j, S³ et leurs intersections
5. normalizer_of: la liste des normalisateurs dans S³
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from src.algebra.cyclo import (
    CycloField,
    golden_ratio,
    golden_ratio_inverse,
    imaginary_unit,
    root_of_unity,
    sqrt_half,
    totient,
)
from src.algebra.quat import UnitQuaternion
from src.config import KERNEL_CONFIG
from src.exceptions import ClosureCapExceeded, ConductorMismatchError, UnrecognizedSubgroupError


# ============================================================================
# Étiquettes
# ============================================================================

@dataclass(frozen=True)
class GroupTag:
    """Type d'un sous-groupe fini de S³ à conjugaison près."""
    kind: str   # cyclic | bin_dihedral | bin_tetra | bin_octa | bin_icosa
    order: int

    def __post_init__(self):
        fixed = {"bin_tetra": 24, "bin_octa": 48, "bin_icosa": 120}
        if self.kind in fixed and self.order != fixed[self.kind]:
            raise ValueError(f"{self.kind} has order {fixed[self.kind]}")
        if self.kind == "bin_dihedral" and (self.order < 4 or self.order % 4):
            raise ValueError(f"binary dihedral order must be a multiple of 4, got {self.order}")

    @property
    def name(self) -> str:
        if self.kind == "cyclic":
            return f"C{self.order}"
        if self.kind == "bin_dihedral":
            return f"D*{self.order}"
        return {"bin_tetra": "T*", "bin_octa": "O*", "bin_icosa": "I*"}[self.kind]

    def __str__(self) -> str:
        return self.name


def Cyclic(n: int) -> GroupTag:
    return GroupTag("cyclic", n)


def BinDihedral(order: int) -> GroupTag:
    return GroupTag("bin_dihedral", order)


BIN_TETRA = GroupTag("bin_tetra", 24)
BIN_OCTA = GroupTag("bin_octa", 48)
BIN_ICOSA = GroupTag("bin_icosa", 120)


# ============================================================================
# Groupe fini
# ============================================================================

def element_order(x: UnitQuaternion, limit: int = 100000) -> int:
    one = UnitQuaternion.one(x.field)
    y, k = x, 1
    while y != one:
        y = y * x
        k += 1
        if k > limit:
            raise ClosureCapExceeded(limit)
    return k


class FinSubgroupS3:
    """
    Sous-groupe fini de S³ donné par ses éléments.

    Les éléments sont triés dans l'ordre canonique (sort_key), ce qui fixe
    les représentants de classes et la sérialisation.
    """

    def __init__(self, elements: Iterable[UnitQuaternion], field: CycloField):
        self.field = field
        self.elements: FrozenSet[UnitQuaternion] = frozenset(elements)
        self.sorted_elements: List[UnitQuaternion] = sorted(self.elements, key=lambda q: q.sort_key())
        self._orders: Optional[Dict[UnitQuaternion, int]] = None
        self._tag: Optional[GroupTag] = None
        self._index: Optional[Dict[UnitQuaternion, int]] = None
        self._table: Optional[List[List[int]]] = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: UnitQuaternion) -> bool:
        return x in self.elements

    def __iter__(self):
        return iter(self.sorted_elements)

    def __eq__(self, other) -> bool:
        return isinstance(other, FinSubgroupS3) and self.elements == other.elements

    def __hash__(self) -> int:
        return hash(self.elements)

    def __repr__(self) -> str:
        return f"<FinSubgroupS3(order={self.order}, tag={self.tag})>"

    def element_orders(self) -> Dict[UnitQuaternion, int]:
        if self._orders is None:
            self._orders = {x: element_order(x) for x in self.sorted_elements}
        return self._orders

    def order_multiset(self) -> Dict[int, int]:
        return dict(Counter(self.element_orders().values()))

    @property
    def tag(self) -> GroupTag:
        if self._tag is None:
            self._tag = classify(self)
        return self._tag

    def index_of(self, x: UnitQuaternion) -> int:
        if self._index is None:
            self._index = {x: k for k, x in enumerate(self.sorted_elements)}
        return self._index[x]

    def multiplication_table(self) -> List[List[int]]:
        """Table de Cayley sur les indices de sorted_elements."""
        if self._table is None:
            self.index_of(self.sorted_elements[0])
            self._table = [
                [self._index[a * b] for b in self.sorted_elements]
                for a in self.sorted_elements
            ]
        return self._table


# ============================================================================
# Clôture et groupes standards
# ============================================================================

def closure(gens: Iterable[UnitQuaternion], field: CycloField, cap: Optional[int] = None) -> FinSubgroupS3:
    """
    Plus petit ensemble fermé contenant les générateurs et 1.

    Raises:
        ClosureCapExceeded: si plus de `cap` éléments sont produits
    """
    cap = cap if cap is not None else KERNEL_CONFIG["closure_cap"]
    gens = list(gens)
    one = UnitQuaternion.one(field)
    seen = {one}
    frontier = [one]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    new.append(y)
                    if len(seen) > cap:
                        raise ClosureCapExceeded(cap)
        frontier = new
    return FinSubgroupS3(seen, field)


def cyclic_group(field: CycloField, n: int) -> FinSubgroupS3:
    """Cₙ = {e^{2πik/n}}."""
    if field.conductor % n:
        raise ConductorMismatchError(f"C{n} needs conductor divisible by {n}")
    zero = field.zero
    return FinSubgroupS3(
        (UnitQuaternion(root_of_unity(field, k, n), zero) for k in range(n)), field
    )


def binary_dihedral(field: CycloField, order: int) -> FinSubgroupS3:
    """D*₂ₙ = Cₙ ∪ Cₙ j, d'ordre 2n."""
    n = order // 2
    cyc = cyclic_group(field, n)
    j = UnitQuaternion(field.zero, field.one)
    return FinSubgroupS3(list(cyc.elements) + [x * j for x in cyc.elements], field)


def omega(field: CycloField) -> UnitQuaternion:
    """ω = (1 + i + j + k)/2."""
    i = imaginary_unit(field)
    half = (field.one + i) * Fraction(1, 2)
    return UnitQuaternion(half, half)


def octa_generator(field: CycloField) -> UnitQuaternion:
    """√½ + √½ j."""
    s = sqrt_half(field)
    return UnitQuaternion(s, s)


def icosa_generator(field: CycloField) -> UnitQuaternion:
    """τ⁻¹/2 + τ j/2 + k/2."""
    i = imaginary_unit(field)
    half = Fraction(1, 2)
    return UnitQuaternion(golden_ratio_inverse(field) * half, (golden_ratio(field) + i) * half)


def quaternion_units(field: CycloField) -> Tuple[UnitQuaternion, UnitQuaternion]:
    i = UnitQuaternion(imaginary_unit(field), field.zero)
    j = UnitQuaternion(field.zero, field.one)
    return i, j


def standard_group(tag: GroupTag, field: CycloField) -> FinSubgroupS3:
    """
    Ensemble exact des éléments du groupe standard de type `tag`.

    Raises:
        ConductorMismatchError: si le corps ne contient pas les racines nécessaires
    """
    return _standard_group_cached(tag, field.conductor)


@lru_cache(maxsize=None)
def _standard_group_cached(tag: GroupTag, conductor: int) -> FinSubgroupS3:
    from src.algebra.cyclo import make_field

    field = make_field(conductor)
    if tag.kind == "cyclic":
        return cyclic_group(field, tag.order)
    if tag.kind == "bin_dihedral":
        if conductor % (tag.order // 2):
            raise ConductorMismatchError(f"{tag} needs conductor divisible by {tag.order // 2}")
        return binary_dihedral(field, tag.order)
    i, j = quaternion_units(field)
    gens = [i, j, omega(field)]
    if tag.kind == "bin_octa":
        if conductor % 8:
            raise ConductorMismatchError("O* needs conductor divisible by 8")
        gens.append(octa_generator(field))
    elif tag.kind == "bin_icosa":
        if conductor % 20:
            raise ConductorMismatchError("I* needs conductor divisible by 20")
        gens.append(icosa_generator(field))
    group = closure(gens, field)
    if group.order != tag.order:
        raise UnrecognizedSubgroupError(f"{tag} closure produced {group.order} elements")
    return group


# ============================================================================
# Reconnaissance
# ============================================================================

def _divisors(n: int) -> List[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def cyclic_multiset(n: int) -> Dict[int, int]:
    return {d: totient(d) for d in _divisors(n)}


POLYHEDRAL_MULTISETS = {
    BIN_TETRA: {1: 1, 2: 1, 3: 8, 4: 6, 6: 8},
    BIN_OCTA: {1: 1, 2: 1, 3: 8, 4: 18, 6: 8, 8: 12},
    BIN_ICOSA: {1: 1, 2: 1, 3: 20, 4: 30, 5: 24, 6: 20, 10: 24},
}


def expected_multiset(tag: GroupTag) -> Dict[int, int]:
    if tag.kind == "cyclic":
        return cyclic_multiset(tag.order)
    if tag.kind == "bin_dihedral":
        result = Counter(cyclic_multiset(tag.order // 2))
        result[4] += tag.order // 2
        return dict(result)
    return POLYHEDRAL_MULTISETS[tag]


def classify(g: FinSubgroupS3) -> GroupTag:
    """
    Étiquette d'un sous-groupe de S³ par (ordre, multiensemble des ordres).

    D*₄ = {±1, ±j} est conjugué à C₄ et reconnu comme Cyclic(4).

    Raises:
        UnrecognizedSubgroupError: si aucune étiquette ne correspond
    """
    n = g.order
    observed = g.order_multiset()
    candidates = [Cyclic(n)]
    if n % 4 == 0 and n >= 8:
        candidates.append(BinDihedral(n))
    candidates += [t for t in POLYHEDRAL_MULTISETS if t.order == n]
    for tag in candidates:
        if expected_multiset(tag) == observed:
            return tag
    raise UnrecognizedSubgroupError(
        f"not a subgroup of S3 up to conjugacy: order {n}, orders {sorted(observed.items())}"
    )


def conjugate_group(g: FinSubgroupS3, by: UnitQuaternion) -> FinSubgroupS3:
    inv = by.conj()
    return FinSubgroupS3((by * x * inv for x in g.elements), g.field)


def is_subgroup(a: FinSubgroupS3, b: FinSubgroupS3) -> bool:
    return a.elements <= b.elements


# ============================================================================
# Sous-groupes symboliques et normalisateurs
# ============================================================================

@dataclass(frozen=True)
class SymbolicSubgroup:
    """
    Sous-groupe de S³ fini ou continu.

    kind: "finite" (group renseigné), "o2star" (S¹ ∪ S¹j), "s3" (S³ entier).
    """
    kind: str
    group: Optional[FinSubgroupS3] = None

    @classmethod
    def finite(cls, group: FinSubgroupS3) -> "SymbolicSubgroup":
        return cls("finite", group)

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    def contains(self, x: UnitQuaternion) -> bool:
        if self.kind == "s3":
            return True
        if self.kind == "o2star":
            return x.in_o2_star()
        return x in self.group

    def intersect(self, other: "SymbolicSubgroup") -> "SymbolicSubgroup":
        if self.kind == "s3":
            return other
        if other.kind == "s3":
            return self
        if self.kind == "o2star" and other.kind == "o2star":
            return self
        if self.kind == "finite" and other.kind == "finite":
            return SymbolicSubgroup.finite(
                FinSubgroupS3(self.group.elements & other.group.elements, self.group.field)
            )
        finite = self if self.kind == "finite" else other
        return SymbolicSubgroup.finite(
            FinSubgroupS3((x for x in finite.group.elements if x.in_o2_star()), finite.group.field)
        )

    def describe(self) -> str:
        if self.kind == "finite":
            return str(self.group.tag)
        return {"o2star": "O(2)*", "s3": "S3"}[self.kind]


O2_STAR = SymbolicSubgroup("o2star")
S3_FULL = SymbolicSubgroup("s3")


def normalizer_of(tag: GroupTag, field: CycloField) -> SymbolicSubgroup:
    """
    Normalisateur dans S³ du groupe standard de type `tag`.

    Cₙ (n>2) → O(2)*; C₁, C₂ → S³; D*₄ₙ (n>2) → D*₈ₙ; D*₈, T*, O* → O*;
    I* → I*.
    """
    if tag.kind == "cyclic":
        return O2_STAR if tag.order > 2 else S3_FULL
    if tag.kind == "bin_dihedral":
        if tag.order == 8:
            return SymbolicSubgroup.finite(standard_group(BIN_OCTA, field))
        return SymbolicSubgroup.finite(standard_group(BinDihedral(2 * tag.order), field))
    if tag.kind in ("bin_tetra", "bin_octa"):
        return SymbolicSubgroup.finite(standard_group(BIN_OCTA, field))
    return SymbolicSubgroup.finite(standard_group(BIN_ICOSA, field))


def normalizer_conductor(tag: GroupTag) -> int:
    """Conducteur minimal contenant le groupe standard et son normalisateur."""
    if tag.kind == "cyclic":
        return tag.order
    if tag.kind == "bin_dihedral":
        return tag.order if tag.order != 8 else 8
    if tag.kind in ("bin_tetra", "bin_octa"):
        return 8
    return 20
