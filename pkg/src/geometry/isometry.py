"""
Groupe d'isométries des orbifolds S³/G.

Isom⁺(S³/G) ≅ Norm_{SO(4)}(G)/G. Pour G̃ = (L, L_K, R, R_K, φ), le
normalisateur est formé des couples (a, b) ∈ N_L × N_R (N_L = Norm(L) ∩
Norm(L_K)) dont les automorphismes induits commutent avec φ. Ce module:
1. Calcule N_L, N_R comme sous-groupes symboliques
2. Remplace chaque facteur continu par son groupe de composantes
   (O(2)* → {1, j}, S³ → {1}), les automorphismes induits étant constants
   sur les composantes
3. Quotiente par l'image de G̃ et reconnaît π₀
4. Décide l'existence d'isométries renversant l'orientation Φ̄_{p,q}
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Set, Tuple

from src.algebra.quat import IsometryS3, UnitQuaternion
from src.groups.duval import FiveTuple, ProductGroup, so4_image
from src.groups.groups3 import O2_STAR, SymbolicSubgroup, normalizer_of
from src.geometry.recognize import TRIVIAL, Cyclic, FiniteGroupId, recognize
from src.logger import get_logger

logger = get_logger("isometry")

Pair = Tuple[UnitQuaternion, UnitQuaternion]

IDENTITY_COMPONENTS = (
    "Trivial", "S1", "S1xS1", "SO3", "S3", "SO3xS1", "S3centralS1", "PSO4", "SO4",
)


@dataclass(frozen=True)
class LieDescriptor:
    """Composante neutre (type symbolique) et groupe des composantes reconnu."""
    identity_component: str
    pi0: FiniteGroupId

    def to_json(self) -> Dict:
        return {"isom0": self.identity_component, "pi0": self.pi0.to_json(), "pi0_label": self.pi0.label}

    def __str__(self) -> str:
        return f"({self.identity_component}, {self.pi0.label})"


@dataclass(frozen=True)
class ORWitness:
    """Existence d'une isométrie renversant l'orientation, avec témoin Φ̄_{p,q}."""
    exists: bool
    witness: Optional[IsometryS3] = None
    name: Optional[str] = None

    def to_json(self) -> Dict:
        return {"or_isometry": self.exists, "witness": self.name}


# ============================================================================
# Normalisateurs candidats
# ============================================================================

def candidate_normalizer(t: FiveTuple) -> Tuple[SymbolicSubgroup, SymbolicSubgroup]:
    """(N_L, N_R) avec N_L = Norm(L) ∩ Norm(L_K), N_R = Norm(R) ∩ Norm(R_K)."""
    field = t.field
    n_left = normalizer_of(t.L.tag, field).intersect(normalizer_of(t.L_K.tag, field))
    n_right = normalizer_of(t.R.tag, field).intersect(normalizer_of(t.R_K.tag, field))
    return n_left, n_right


def diagram_commutes(t: FiveTuple, g: UnitQuaternion, f: UnitQuaternion) -> bool:
    """φ(g⁻¹ x g L_K) = f⁻¹ φ(x) f R_K pour tout représentant x de L/L_K."""
    gi, fi = g.conj(), f.conj()
    for x in t.left_reps():
        if t.phi_of(gi * x * g) != t.rep_R(fi * t.phi_of(x) * f):
            return False
    return True


def quotient_generators(t: FiveTuple) -> List[UnitQuaternion]:
    """Générateurs de L/L_K (représentants canoniques, choix glouton)."""
    reps = t.left_reps()
    one = t.rep_L(UnitQuaternion.one(t.field))
    gens: List[UnitQuaternion] = []
    generated = {one}
    for x in reps:
        if x in generated:
            continue
        gens.append(x)
        frontier = list(generated)
        while frontier:
            new = []
            for y in frontier:
                for g in gens:
                    z = t.rep_L(y * g)
                    if z not in generated:
                        generated.add(z)
                        new.append(z)
            frontier = new
    return gens


class Side:
    """Un facteur N_L ou N_R et son groupe de composantes."""

    def __init__(self, subgroup: SymbolicSubgroup, field):
        self.subgroup = subgroup
        self.kind = subgroup.kind
        one = UnitQuaternion.one(field)
        if self.kind == "finite":
            self.reps = list(subgroup.group.sorted_elements)
        elif self.kind == "o2star":
            self.reps = [one, UnitQuaternion(field.zero, field.one)]
        else:
            self.reps = [one]
        self._one = one
        self._j = UnitQuaternion(field.zero, field.one)

    def component(self, x: UnitQuaternion) -> UnitQuaternion:
        if self.kind == "finite":
            return x
        if self.kind == "o2star":
            return self._one if x.in_circle() else self._j
        return self._one


def _sort_pair(pair) -> Tuple:
    return tuple(x.sort_key() for x in pair[:2]) + tuple(pair[2:])


def identity_component_type(left: str, right: str, minus_left: bool, minus_right: bool) -> str:
    """
    Type de la composante neutre à partir des facteurs continus survivants.

    minus_left: −1 ∈ L_K; minus_right: −1 ∈ R_K.
    """
    kinds = (left, right)
    if kinds == ("finite", "finite"):
        return "Trivial"
    if kinds == ("o2star", "o2star"):
        return "S1xS1"
    if "finite" in kinds and "o2star" in kinds:
        return "S1"
    if kinds == ("s3", "s3"):
        return "PSO4" if minus_left else "SO4"
    s3_minus = minus_left if left == "s3" else minus_right
    if "o2star" in kinds:
        return "SO3xS1" if s3_minus else "S3centralS1"
    return "SO3" if s3_minus else "S3"


class NormalizerAnalysis:
    """
    Calcul de Norm(G̃)/G̃ au niveau des composantes.

    left_restrict permet de restreindre N_L (O(2)* pour les isométries
    préservant la fibration de Hopf).
    """

    def __init__(self, group: ProductGroup, left_restrict: Optional[SymbolicSubgroup] = None):
        self.group = group
        self.five = group.five_tuple
        n_left, n_right = candidate_normalizer(self.five)
        if left_restrict is not None:
            n_left = n_left.intersect(left_restrict)
        self.left = Side(n_left, group.field)
        self.right = Side(n_right, group.field)
        self.gens = quotient_generators(self.five)
        minus = -UnitQuaternion.one(group.field)
        self.minus_in_LK = minus in self.five.L_K
        self.minus_in_RK = minus in self.five.R_K
        self._passing: Optional[List[Pair]] = None
        self._cosets: Optional[Dict] = None
        self._image: Optional[Set[Pair]] = None

    # ------------------------------------------------------------------
    # Clés des automorphismes induits
    # ------------------------------------------------------------------

    def left_key(self, a: UnitQuaternion) -> Tuple:
        ai = a.conj()
        return tuple(self.five.phi_of(a * g * ai) for g in self.gens)

    def right_key(self, b: UnitQuaternion) -> Tuple:
        bi = b.conj()
        return tuple(self.five.rep_R(b * self.five.phi_of(g) * bi) for g in self.gens)

    def passing(self) -> List[Pair]:
        """Couples de composantes (a, b) tels que φ∘c_a = c_b∘φ."""
        if self._passing is None:
            by_key: Dict[Tuple, List[UnitQuaternion]] = {}
            for b in self.right.reps:
                by_key.setdefault(self.right_key(b), []).append(b)
            self._passing = [
                (a, b) for a in self.left.reps for b in by_key.get(self.left_key(a), [])
            ]
        return self._passing

    def mul(self, x: Pair, y: Pair) -> Pair:
        return (self.left.component(x[0] * y[0]), self.right.component(x[1] * y[1]))

    def image_of_group(self) -> Set[Pair]:
        if self._image is None:
            self._image = {
                (self.left.component(l), self.right.component(r)) for l, r in self.group.pairs
            }
        return self._image

    def cosets(self) -> Dict[Pair, Pair]:
        """Représentant canonique de la classe modulo l'image de G̃."""
        if self._cosets is None:
            image = list(self.image_of_group())
            reps: Dict[Pair, Pair] = {}
            for p in sorted(self.passing(), key=_sort_pair):
                if p in reps:
                    continue
                for h in image:
                    reps[self.mul(p, h)] = p
            self._cosets = reps
        return self._cosets

    def pi0_elements(self) -> List[Pair]:
        return sorted(set(self.cosets().values()), key=_sort_pair)

    def pi0_mul(self, x: Pair, y: Pair) -> Pair:
        return self.cosets()[self.mul(x, y)]

    def pi0(self) -> FiniteGroupId:
        return recognize(self.pi0_elements(), self.pi0_mul)

    def identity_component(self) -> str:
        return identity_component_type(
            self.left.kind, self.right.kind, self.minus_in_LK, self.minus_in_RK
        )

    def descriptor(self) -> LieDescriptor:
        return LieDescriptor(self.identity_component(), self.pi0())

    # ------------------------------------------------------------------
    # Renversement d'orientation
    # ------------------------------------------------------------------

    def same_sides(self) -> bool:
        five = self.five
        return five.L == five.R and five.L_K == five.R_K

    def reversing_passing(self) -> List[Pair]:
        """
        Couples (p, q) tels que Φ̄_{p,q} normalise Φ(G̃):
        φ(c_p(φ(x))) = c_q(x) sur L/L_K (L = R, L_K = R_K).
        """
        if not self.same_sides():
            return []
        five = self.five
        images = [five.phi_of(g) for g in self.gens]
        by_key: Dict[Tuple, List[UnitQuaternion]] = {}
        for q in self.left.reps:
            qi = q.conj()
            by_key.setdefault(tuple(five.rep_R(q * g * qi) for g in self.gens), []).append(q)
        result = []
        for p in self.left.reps:
            pi = p.conj()
            key = tuple(five.phi_of(p * y * pi) for y in images)
            result.extend((p, q) for q in by_key.get(key, []))
        return result


# ============================================================================
# Opérations publiques
# ============================================================================

def isom_plus(group: ProductGroup) -> LieDescriptor:
    """(Isom₀, π₀ Isom⁺) de S³/Φ(G̃)."""
    analysis = NormalizerAnalysis(group)
    descriptor = analysis.descriptor()
    logger.debug(f"Isom+ {group!r}: {descriptor}")
    return descriptor


def _phibar(p: UnitQuaternion, q: UnitQuaternion) -> IsometryS3:
    return IsometryS3(p, q, reversing=True)


def verify_witness(group: ProductGroup, w: IsometryS3) -> bool:
    """
    w ∘ x ∘ w⁻¹ ∈ Φ(G̃) pour tout x ∈ Φ(G̃).

    Raises:
        ValueError: si w préserve l'orientation
    """
    if not w.reversing:
        raise ValueError("witness must be orientation-reversing")
    image = so4_image(group)
    w_inv = w.inverse()
    return all(w.compose(x).compose(w_inv) in image for x in image)


def or_exists(group: ProductGroup) -> ORWitness:
    """
    Existence de Φ̄_{p,q} normalisant Φ(G̃).

    Test négatif rapide: L et R (ou L_K et R_K) de types différents.
    Témoins essayés d'abord: Φ̄_{1,1} puis Φ̄_{j,1}.
    """
    five = group.five_tuple
    if five.L.tag != five.R.tag or five.L_K.tag != five.R_K.tag:
        return ORWitness(False)
    analysis = NormalizerAnalysis(group)
    passing = set(analysis.reversing_passing())
    if not passing:
        return ORWitness(False)

    field = group.field
    one = UnitQuaternion.one(field)
    j = UnitQuaternion(field.zero, field.one)
    for (p, q), name in (((one, one), "phibar_1_1"), ((j, one), "phibar_j_1")):
        if (analysis.left.component(p), analysis.left.component(q)) in passing:
            return ORWitness(True, _phibar(p, q), name)
    p, q = min(passing, key=_sort_pair)
    return ORWitness(True, _phibar(p, q), "search")


def full_isom(group: ProductGroup) -> LieDescriptor:
    """
    (Isom₀, π₀ Isom) en incluant les composantes renversant l'orientation.

    Composition: Φ̄_{a,b}∘Φ_{c,d} = Φ̄_{ad,bc}, Φ̄_{a,b}∘Φ̄_{c,d} = Φ_{ad,bc}.
    """
    analysis = NormalizerAnalysis(group)
    left, right = analysis.left, analysis.right
    elements = [(a, b, False) for a, b in analysis.passing()]
    elements += [(p, q, True) for p, q in analysis.reversing_passing()]

    def mul(x, y):
        a, b, rev = x
        c, d, rev2 = y
        if not rev:
            return (left.component(a * c), right.component(b * d), rev2)
        return (left.component(a * d), right.component(b * c), not rev2)

    image = [(l, r, False) for l, r in analysis.image_of_group()]
    reps: Dict = {}
    for x in sorted(elements, key=_sort_pair):
        if x in reps:
            continue
        for h in image:
            reps[mul(x, h)] = x
    pi0_elements = sorted(set(reps.values()), key=_sort_pair)
    pi0 = recognize(pi0_elements, lambda x, y: reps[mul(x, y)])
    return LieDescriptor(analysis.identity_component(), pi0)


def isom_fiberwise(analysis: NormalizerAnalysis) -> Tuple[LieDescriptor, List[Pair]]:
    """
    Image de {(g, 1) : g ∈ S¹} dans le normalisateur restreint.

    Retourne le descripteur et, pour un facteur gauche fini, les couples
    (g, 1) correspondants.
    """
    if analysis.left.kind != "finite":
        return LieDescriptor("S1", TRIVIAL), []
    one_right = analysis.right.component(UnitQuaternion.one(analysis.group.field))
    base_key = analysis.right_key(UnitQuaternion.one(analysis.group.field))
    fixing = [
        g for g in analysis.left.reps
        if g.in_circle() and analysis.left_key(g) == base_key
    ]
    kernel = sum(1 for x in analysis.five.L_K.elements if x.in_circle())
    return LieDescriptor("Trivial", Cyclic(len(fixing) // kernel)), [(g, one_right) for g in fixing]


def hopf_analysis(group: ProductGroup) -> NormalizerAnalysis:
    """Normalisateur restreint à O(2)* × S³ (isométries préservant la fibration de Hopf)."""
    return NormalizerAnalysis(group, left_restrict=O2_STAR)


def pi0_quotient(analysis: NormalizerAnalysis, sub: Sequence[Pair]) -> Tuple[List[Pair], Dict[Pair, Pair]]:
    """
    π₀ quotienté par le sous-groupe distingué formé des classes de `sub`.

    Returns:
        (représentants du quotient, classe → représentant)
    """
    cosets = analysis.cosets()
    field = analysis.group.field
    identity = cosets[(analysis.left.component(UnitQuaternion.one(field)),
                       analysis.right.component(UnitQuaternion.one(field)))]
    normal = {identity} | {cosets[s] for s in sub}
    frontier = list(normal)
    while frontier:
        new = []
        for x in frontier:
            for y in list(normal):
                z = analysis.pi0_mul(x, y)
                if z not in normal:
                    normal.add(z)
                    new.append(z)
        frontier = new
    reps: Dict[Pair, Pair] = {}
    for x in analysis.pi0_elements():
        if x in reps:
            continue
        for k in normal:
            reps[analysis.pi0_mul(x, k)] = x
    return sorted(set(reps.values()), key=_sort_pair), reps
