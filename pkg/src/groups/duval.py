"""
Construction des sous-groupes finis de SO(4) par la description de Du Val.

Un groupe G̃ ⊂ S³ × S³ est décrit par un quintuplet (L, L_K, R, R_K, φ):
L_K ◁ L, R_K ◁ R et φ: L/L_K → R/R_K un isomorphisme. Alors
G̃ = {(l, r) : r ∈ φ(l L_K)} et Φ(G̃) = {h ↦ l h r⁻¹} ⊂ SO(4).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from src.algebra.cyclo import CycloField, make_field
from src.algebra.quat import IsometryS3, UnitQuaternion, quaternion_from_json, quaternion_to_json
from src.exceptions import ConductorMismatchError, InvalidGroupError, NotClosedError
from src.groups.families import FamilySpec, Recipe, required_conductor
from src.groups.groups3 import (
    BIN_ICOSA,
    BIN_OCTA,
    BIN_TETRA,
    BinDihedral,
    Cyclic,
    FinSubgroupS3,
    GroupTag,
    element_order,
    standard_group,
)
from src.logger import get_logger

logger = get_logger("duval")

Pair = Tuple[UnitQuaternion, UnitQuaternion]


# ============================================================================
# Classes latérales
# ============================================================================

def coset_representatives(group: FinSubgroupS3, kernel: FinSubgroupS3) -> Dict[UnitQuaternion, UnitQuaternion]:
    """
    Associe à chaque élément le plus petit élément (ordre canonique) de sa
    classe x·K.
    """
    reps: Dict[UnitQuaternion, UnitQuaternion] = {}
    for x in group.sorted_elements:
        if x in reps:
            continue
        for k in kernel.elements:
            reps[x * k] = x
    return reps


def quotient_group(elements: Iterable, mul: Callable, subgroup: Iterable) -> Dict:
    """
    Représentant de classe pour chaque élément d'un groupe fini quelconque.

    Les éléments doivent être ordonnables par `sorted`; `subgroup` est
    supposé distingué.
    """
    sub = list(subgroup)
    reps: Dict = {}
    for x in elements:
        if x in reps:
            continue
        for k in sub:
            reps[mul(x, k)] = x
    return reps


@dataclass
class FiveTuple:
    """Quintuplet (L, L_K, R, R_K, φ), φ donné sur les représentants canoniques."""
    L: FinSubgroupS3
    L_K: FinSubgroupS3
    R: FinSubgroupS3
    R_K: FinSubgroupS3
    phi: Dict[UnitQuaternion, UnitQuaternion]

    def __post_init__(self):
        self._rep_L = coset_representatives(self.L, self.L_K)
        self._rep_R = coset_representatives(self.R, self.R_K)

    @property
    def field(self) -> CycloField:
        return self.L.field

    def rep_L(self, x: UnitQuaternion) -> UnitQuaternion:
        return self._rep_L[x]

    def rep_R(self, y: UnitQuaternion) -> UnitQuaternion:
        return self._rep_R[y]

    def left_reps(self) -> List[UnitQuaternion]:
        return sorted(set(self._rep_L.values()), key=lambda q: q.sort_key())

    def right_reps(self) -> List[UnitQuaternion]:
        return sorted(set(self._rep_R.values()), key=lambda q: q.sort_key())

    def phi_of(self, x: UnitQuaternion) -> UnitQuaternion:
        """Représentant de φ(x L_K)."""
        return self.phi[self._rep_L[x]]

    def quotient_order(self) -> int:
        return len(self.phi)

    def pairs(self) -> FrozenSet[Pair]:
        result: Set[Pair] = set()
        kernel = list(self.R_K.elements)
        for l in self.L.sorted_elements:
            rep = self.phi_of(l)
            for k in kernel:
                result.add((l, rep * k))
        return frozenset(result)

    def tags(self) -> Tuple[GroupTag, GroupTag, GroupTag, GroupTag]:
        return self.L.tag, self.L_K.tag, self.R.tag, self.R_K.tag

    def to_json(self) -> Dict:
        return {
            "L": self.L.tag.name,
            "L_K": self.L_K.tag.name,
            "R": self.R.tag.name,
            "R_K": self.R_K.tag.name,
            "phi": [[quaternion_to_json(a), quaternion_to_json(b)] for a, b in sorted(
                self.phi.items(), key=lambda kv: kv[0].sort_key())],
        }


def _tag_from_name(name: str) -> GroupTag:
    if name.startswith("D*"):
        return BinDihedral(int(name[2:]))
    if name.startswith("C"):
        return Cyclic(int(name[1:]))
    return {"T*": BIN_TETRA, "O*": BIN_OCTA, "I*": BIN_ICOSA}[name]


def five_tuple_from_json(field: CycloField, data: Dict) -> FiveTuple:
    """Reconstruit le quintuplet sérialisé (groupes standards + φ)."""
    groups = [standard_group(_tag_from_name(data[k]), field) for k in ("L", "L_K", "R", "R_K")]
    phi = {quaternion_from_json(field, a): quaternion_from_json(field, b) for a, b in data["phi"]}
    return FiveTuple(*groups, phi=phi)


# ============================================================================
# Groupe produit
# ============================================================================

class ProductGroup:
    """
    Sous-groupe fini G̃ ⊂ S³ × S³ contenant (−1, −1).

    L'ordre de Φ(G̃) ⊂ SO(4) vaut |G̃|/2.
    """

    def __init__(self, pairs: Iterable[Pair], field: CycloField,
                 five_tuple: Optional[FiveTuple] = None, spec: Optional[FamilySpec] = None):
        self.field = field
        self.pairs: FrozenSet[Pair] = frozenset(pairs)
        self.spec = spec
        self._five_tuple = five_tuple

    @property
    def order(self) -> int:
        """|G̃|."""
        return len(self.pairs)

    @property
    def so4_order(self) -> int:
        return len(self.pairs) // 2

    def __contains__(self, pair: Pair) -> bool:
        return pair in self.pairs

    def __iter__(self):
        return iter(self.pairs)

    @property
    def five_tuple(self) -> FiveTuple:
        if self._five_tuple is None:
            self._five_tuple = tuple_of(self)
        return self._five_tuple

    def __repr__(self) -> str:
        label = self.spec.label() if self.spec else "?"
        return f"<ProductGroup({label}, |G̃|={self.order}, conductor={self.field.conductor})>"


# ============================================================================
# Isomorphismes de quotients
# ============================================================================

def extend_images(L: FinSubgroupS3, L_K: FinSubgroupS3, R: FinSubgroupS3, R_K: FinSubgroupS3,
                  images: List[Pair]) -> Optional[Dict[UnitQuaternion, UnitQuaternion]]:
    """
    Étend les images de générateurs de L/L_K en un isomorphisme L/L_K → R/R_K.

    Parcours en largeur du graphe de Cayley des classes; retourne None si
    les images sont incohérentes, ne couvrent pas L/L_K ou si l'application
    n'est pas bijective.

    Raises:
        InvalidGroupError: si un générateur sort de L ou une image sort de R
    """
    rep_L = coset_representatives(L, L_K)
    rep_R = coset_representatives(R, R_K)
    for g, h in images:
        if g not in L or h not in R:
            raise InvalidGroupError("generator image outside the declared groups")

    one = UnitQuaternion.one(L.field)
    phi = {rep_L[one]: rep_R[one]}
    frontier = [rep_L[one]]
    while frontier:
        new = []
        for c in frontier:
            d = phi[c]
            for g, h in images:
                c2 = rep_L[c * g]
                d2 = rep_R[d * h]
                if c2 in phi:
                    if phi[c2] != d2:
                        return None
                else:
                    phi[c2] = d2
                    new.append(c2)
        frontier = new

    n_left = len(set(rep_L.values()))
    n_right = len(set(rep_R.values()))
    if len(phi) != n_left or n_left != n_right or len(set(phi.values())) != n_left:
        return None
    return phi


def _search_images(L, L_K, R, R_K, images: List[Pair],
                   searched: List[UnitQuaternion]) -> Dict[UnitQuaternion, UnitQuaternion]:
    """Complète `images` par la première image cohérente (ordre canonique) de chaque générateur cherché."""
    if not searched:
        phi = extend_images(L, L_K, R, R_K, images)
        if phi is None:
            raise InvalidGroupError("generator images do not define an isomorphism")
        return phi
    head, rest = searched[0], searched[1:]
    for candidate in R.sorted_elements:
        try:
            return _search_images(L, L_K, R, R_K, images + [(head, candidate)], rest)
        except InvalidGroupError:
            continue
    raise InvalidGroupError("no generator image defines an isomorphism")


def sign_outside_tetra(group: FinSubgroupS3) -> Dict[UnitQuaternion, UnitQuaternion]:
    """Automorphisme de O*: x ↦ x sur T*, x ↦ −x hors de T*."""
    tetra = standard_group(BIN_TETRA, group.field)
    return {x: (x if x in tetra else -x) for x in group.sorted_elements}


def _generated_indices(table: List[List[int]], one: int, gens: List[int]) -> int:
    seen = {one}
    frontier = [one]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = table[x][g]
                if y not in seen:
                    seen.add(y)
                    new.append(y)
        frontier = new
    return len(seen)


def _extend_on_table(table: List[List[int]], one: int, gens: List[int],
                     targets: List[int]) -> Optional[List[int]]:
    mapping = {one: one}
    frontier = [one]
    while frontier:
        new = []
        for x in frontier:
            fx = mapping[x]
            for g, h in zip(gens, targets):
                y, fy = table[x][g], table[fx][h]
                if y in mapping:
                    if mapping[y] != fy:
                        return None
                else:
                    mapping[y] = fy
                    new.append(y)
        frontier = new
    if len(mapping) != len(table) or len(set(mapping.values())) != len(table):
        return None
    return [mapping[k] for k in range(len(table))]


def outer_involution(group: FinSubgroupS3) -> Dict[UnitQuaternion, UnitQuaternion]:
    """
    Premier automorphisme d'ordre 2 non intérieur du groupe (ordre canonique
    des images d'une paire génératrice).

    Raises:
        InvalidGroupError: si le groupe n'en possède pas
    """
    elems = group.sorted_elements
    table = group.multiplication_table()
    one = group.index_of(UnitQuaternion.one(group.field))
    orders = [element_order(x) for x in elems]
    n = len(elems)

    a = max(range(n), key=lambda k: (orders[k], -k))
    b = next((k for k in range(n) if _generated_indices(table, one, [a, k]) == n), None)
    if b is None:
        raise InvalidGroupError("no generating pair found")

    inverse = [next(y for y in range(n) if table[x][y] == one) for x in range(n)]
    conjugations = {(table[table[c][a]][inverse[c]], table[table[c][b]][inverse[c]]) for c in range(n)}

    for a2 in (k for k in range(n) if orders[k] == orders[a]):
        for b2 in (k for k in range(n) if orders[k] == orders[b]):
            if (a2, b2) in conjugations:
                continue
            mapping = _extend_on_table(table, one, [a, b], [a2, b2])
            if mapping is None:
                continue
            if all(mapping[mapping[x]] == x for x in range(n)):
                return {elems[x]: elems[mapping[x]] for x in range(n)}
    raise InvalidGroupError("group has no outer involution")


AUTOMORPHISMS: Dict[str, Callable[[FinSubgroupS3], Dict[UnitQuaternion, UnitQuaternion]]] = {
    "sign_outside_tetra": sign_outside_tetra,
    "outer_icosa": outer_involution,
}


def _phi_from_recipe(recipe: Recipe, L, L_K, R, R_K) -> Dict[UnitQuaternion, UnitQuaternion]:
    rep_L = coset_representatives(L, L_K)
    rep_R = coset_representatives(R, R_K)
    if recipe.phi_mode == "product":
        return {rep_L[x]: rep_R[UnitQuaternion.one(R.field)] for x in L.elements}
    if recipe.phi_mode == "identity":
        return {rep_L[x]: rep_R[x] for x in L.elements}
    if recipe.phi_mode == "automorphism":
        f = AUTOMORPHISMS[recipe.automorphism](L)
        phi = {}
        for x in L.sorted_elements:
            c, d = rep_L[x], rep_R[f[x]]
            if phi.setdefault(c, d) != d:
                raise InvalidGroupError(f"{recipe.automorphism} does not preserve the kernel")
        return phi
    return _search_images(L, L_K, R, R_K, list(recipe.images), list(recipe.search_images))


# ============================================================================
# Construction
# ============================================================================

def resolve_conductor(spec: FamilySpec, override: Optional[int] = None) -> int:
    """
    Conducteur de calcul: le conducteur requis, ou `override` s'il en est
    un multiple.

    Raises:
        ConductorMismatchError: si `override` ne contient pas le corps requis
    """
    needed = required_conductor(spec)
    if override is None:
        return needed
    if override % needed:
        raise ConductorMismatchError(
            f"{spec.label()} needs a conductor divisible by {needed}, got {override}"
        )
    return override


def build(spec: FamilySpec, conductor_override: Optional[int] = None) -> ProductGroup:
    """
    Construit G̃ pour une spécification de famille.

    Raises:
        ConductorMismatchError: conducteur imposé incompatible
        InvalidGroupError: recette incohérente (ordre différent de la forme close)
    """
    conductor = resolve_conductor(spec, conductor_override)
    field = make_field(conductor)
    recipe = spec.definition.recipe(spec, field)
    L, L_K, R, R_K = (standard_group(t, field) for t in (recipe.L, recipe.L_K, recipe.R, recipe.R_K))
    phi = _phi_from_recipe(recipe, L, L_K, R, R_K)
    five = FiveTuple(L, L_K, R, R_K, phi)
    group = ProductGroup(five.pairs(), field, five_tuple=five, spec=spec)

    expected = closed_form_order(spec)
    if group.so4_order != expected or group.order % 2:
        raise InvalidGroupError(
            f"{spec.label()}: built {group.so4_order} elements, expected {expected}"
        )
    logger.debug(f"{spec.label()} construit: |Φ(G̃)|={expected}, conducteur {conductor}")
    return group


def build_from_tuple(five: FiveTuple, spec: Optional[FamilySpec] = None) -> ProductGroup:
    return ProductGroup(five.pairs(), five.field, five_tuple=five, spec=spec)


def closed_form_order(spec: FamilySpec) -> int:
    """|Φ(G̃)| en forme close."""
    return spec.definition.order(spec)


def group_order(group: ProductGroup) -> int:
    """
    |Φ(G̃)| = |G̃|/2.

    Raises:
        InvalidGroupError: si (−1, −1) n'appartient pas à G̃
    """
    minus = -UnitQuaternion.one(group.field)
    if (minus, minus) not in group.pairs:
        raise InvalidGroupError("group does not contain the kernel of Phi")
    return group.order // 2


def tuple_of(group: ProductGroup) -> FiveTuple:
    """
    Retrouve (L, L_K, R, R_K, φ) à partir des éléments de G̃.

    Raises:
        NotClosedError: si les éléments ne forment pas un produit fibré
    """
    field = group.field
    one = UnitQuaternion.one(field)
    L = FinSubgroupS3({l for l, _ in group.pairs}, field)
    R = FinSubgroupS3({r for _, r in group.pairs}, field)
    L_K = FinSubgroupS3({l for l, r in group.pairs if r == one}, field)
    R_K = FinSubgroupS3({r for l, r in group.pairs if l == one}, field)
    if L.order * R_K.order != group.order or R.order * L_K.order != group.order:
        raise NotClosedError("pairs do not form a fibre product of subgroups")
    rep_L = coset_representatives(L, L_K)
    rep_R = coset_representatives(R, R_K)
    phi: Dict[UnitQuaternion, UnitQuaternion] = {}
    for l, r in group.pairs:
        c, d = rep_L[l], rep_R[r]
        if phi.setdefault(c, d) != d:
            raise NotClosedError("pairs do not define a map on L/L_K")
    return FiveTuple(L, L_K, R, R_K, phi)


def so4_image(group: ProductGroup) -> Set[IsometryS3]:
    """Φ(G̃) comme ensemble d'isométries (représentants canoniques de ±(l, r))."""
    return {IsometryS3(l, r) for l, r in group.pairs}


def conjugate_by_phibar(group: ProductGroup, p: UnitQuaternion, q: UnitQuaternion) -> ProductGroup:
    """
    Conjugaison par Φ̄_{p,q}: (l, r) ↦ (p r p⁻¹, q l q⁻¹).

    Φ̄_{1,1} échange les deux facteurs.
    """
    pi, qi = p.conj(), q.conj()
    pairs = ((p * r * pi, q * l * qi) for l, r in group.pairs)
    return ProductGroup(pairs, group.field, spec=group.spec)


def conjugate_by_phi(group: ProductGroup, p: UnitQuaternion, q: UnitQuaternion) -> ProductGroup:
    """Conjugaison par Φ_{p,q}: (l, r) ↦ (p l p⁻¹, q r q⁻¹)."""
    pi, qi = p.conj(), q.conj()
    return ProductGroup(((p * l * pi, q * r * qi) for l, r in group.pairs), group.field, spec=group.spec)


def swap(group: ProductGroup) -> ProductGroup:
    one = UnitQuaternion.one(group.field)
    return conjugate_by_phibar(group, one, one)
