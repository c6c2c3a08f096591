"""
Fibrations de Seifert standard préservées et orbifold de base.

Ce module fournit:
1. StandardFibration: z₁ᵘ/z₂ᵛ ou z̄₁ᵘ/z₂ᵛ; Hopf = (1, 1), anti-Hopf = conjuguée
2. preserves_fibration: test exact sur les éléments de G̃
3. induced_o3_action: action (p, q) ↦ x ↦ ±q x q⁻¹ sur la base S² de la
   fibration de Hopf (S² = quaternions imaginaires unitaires, h ↦ h̄ i h)
4. quotient_signature: signature de S²/Γ (cônes, coins, bord miroir)
5. base_orbifold, isom_p, isom_f, base_action (Table de l'action sur la base)
6. list_fibrations: fibrations calculées + coïncidences connues
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from src.algebra.cyclo import CycloNumber, real_sign
from src.algebra.quat import Quaternion, UnitQuaternion, quaternion_sign_positive
from src.exceptions import NotClosedError, NotHopfPreservingError
from src.groups.duval import ProductGroup, build, swap
from src.groups.families import BIS_FAMILIES, FamilySpec, display_name
from src.geometry.coincidences import coincidences_for
from src.geometry.isometry import (
    LieDescriptor,
    hopf_analysis,
    isom_fiberwise,
    pi0_quotient,
)
from src.geometry.recognize import FiniteGroupId, recognize
from src.logger import get_logger

logger = get_logger("fibration")


# ============================================================================
# Fibrations standard
# ============================================================================

@dataclass(frozen=True)
class StandardFibration:
    u: int = 1
    v: int = 1
    conjugated: bool = False

    def __post_init__(self):
        if self.u < 1 or self.v < 1 or gcd(self.u, self.v) != 1:
            raise ValueError(f"(u, v) = ({self.u}, {self.v}) must be coprime positive integers")

    @property
    def name(self) -> str:
        if (self.u, self.v) == (1, 1):
            return "anti-hopf" if self.conjugated else "hopf"
        z1 = "conj(z1)" if self.conjugated else "z1"
        return f"{z1}^{self.u}/z2^{self.v}"

    def to_json(self) -> Dict:
        return {"fibration": self.name, "u": self.u, "v": self.v, "conjugated": self.conjugated}


HOPF = StandardFibration(1, 1, False)
ANTI_HOPF = StandardFibration(1, 1, True)

INFINITE_FIBRATION_FAMILIES = {"1", "1p", "11", "11p"}


def preserves_fibration(group: ProductGroup, fib: StandardFibration) -> bool:
    """
    G̃ préserve la fibration standard `fib`.

    Hopf: toute composante gauche est dans O(2)*. (u, v) ≠ (1, 1): chaque
    élément est diagonal (w₂ = u₂ = 0) ou antidiagonal (w₁ = u₁ = 0). Les
    fibrations conjuguées se testent après échange des facteurs par Φ̄₁,₁.
    """
    if fib.conjugated:
        group = swap(group)
    if (fib.u, fib.v) == (1, 1):
        return all(l.in_o2_star() for l in {l for l, _ in group.pairs})
    return all(
        (l.in_circle() and r.in_circle()) or (l.in_circle_j() and r.in_circle_j())
        for l, r in group.pairs
    )


def hopf_projection(h: Quaternion) -> Quaternion:
    """π(h) = h̄ i h, point de S² ⊂ Im(ℍ)."""
    i = Quaternion.basis_i(h.field)
    return h.conj() * i * h


# ============================================================================
# Action sur la base
# ============================================================================

class O3Element:
    """x ↦ sign · q x q⁻¹ sur les quaternions imaginaires (q à ± près)."""

    __slots__ = ("sign", "rotation", "_hash")

    def __init__(self, sign: int, rotation: UnitQuaternion):
        if not quaternion_sign_positive(rotation):
            rotation = -rotation
        self.sign = 1 if sign > 0 else -1
        self.rotation = rotation
        self._hash = None

    def compose(self, other: "O3Element") -> "O3Element":
        return O3Element(self.sign * other.sign, self.rotation * other.rotation)

    def apply(self, x: Quaternion) -> Quaternion:
        y = self.rotation * x * self.rotation.conj()
        return y if self.sign > 0 else -y

    def is_identity(self) -> bool:
        return self.sign > 0 and self.rotation.in_circle() and self.rotation.z1 == 1

    def is_reflection(self) -> bool:
        """−R(q) avec R(q) demi-tour: fixe un grand cercle."""
        return self.sign < 0 and self.rotation.real_part().is_zero()

    def is_fixed_point_free(self) -> bool:
        return self.sign < 0 and not self.is_reflection()

    def axis(self) -> Tuple[CycloNumber, CycloNumber, CycloNumber]:
        return self.rotation.components()[1:]

    def matrix(self) -> List[List[CycloNumber]]:
        """Matrice 3×3 sur le sous-corps réel (colonnes: images de i, j, k)."""
        f = self.rotation.field
        columns = [self.apply(b).components()[1:] for b in
                   (Quaternion.basis_i(f), Quaternion.basis_j(f), Quaternion.basis_k(f))]
        return [[columns[c][r] for c in range(3)] for r in range(3)]

    def determinant(self) -> CycloNumber:
        m = self.matrix()
        return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))

    def __eq__(self, other) -> bool:
        return isinstance(other, O3Element) and self.sign == other.sign and self.rotation == other.rotation

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.sign, self.rotation))
        return self._hash

    def __repr__(self) -> str:
        return f"O3Element({self.sign:+d}, {self.rotation!r})"


def o3_image(p: UnitQuaternion, q: UnitQuaternion) -> O3Element:
    """Image de (p, q), p ∈ O(2)*: signe +1 si p ∈ S¹, −1 si p ∈ S¹j."""
    return O3Element(1 if p.in_circle() else -1, q)


def require_hopf(group: ProductGroup, spec: Optional[FamilySpec] = None) -> None:
    """
    Raises:
        NotHopfPreservingError: avec la liste des fibrations préservées
    """
    if not preserves_fibration(group, HOPF):
        family = display_name(spec.family) if spec else "?"
        preserved = [f for f in _computed_fibrations(group, spec)]
        raise NotHopfPreservingError(family, preserved)


def induced_o3_action(group: ProductGroup) -> List[O3Element]:
    """Image de G̃ dans O(3), noyau G̃ ∩ (S¹ × {1}) compris."""
    require_hopf(group, group.spec)
    image = {o3_image(l, r) for l, r in group.pairs}
    return sorted(image, key=lambda e: (-e.sign, e.rotation.sort_key()))


# ============================================================================
# Signature de l'orbifold quotient
# ============================================================================

@dataclass(frozen=True)
class Signature2D:
    """S², ℝP² ou D², cônes et coins triés par ordre croissant."""
    base: str
    cone: Tuple[int, ...] = ()
    corner: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.corner and self.base != "D2":
            raise ValueError("corner reflectors require a D2 base")

    @property
    def label(self) -> str:
        cones = ",".join(str(c) for c in self.cone)
        if self.base == "D2":
            corners = ",".join(str(c) for c in self.corner)
            return "D2" if not (cones or corners) else f"D2({cones};{corners})"
        return f"{self.base}({cones})" if cones else self.base

    def to_json(self) -> Dict:
        return {"base": self.base, "cone": list(self.cone), "corner": list(self.corner)}

    def __str__(self) -> str:
        return self.label


def signature_from_label(label: str) -> Signature2D:
    """Analyse "S2(2,2,3)", "D2(2;3)", "D2(;2,2)", "RP2(3)", "S2"."""
    label = label.strip()
    if "(" not in label:
        return Signature2D(label)
    base, rest = label.split("(", 1)
    rest = rest.rstrip(")")

    def numbers(text: str) -> Tuple[int, ...]:
        return tuple(sorted(int(x) for x in text.split(",") if x.strip()))

    if base == "D2":
        cones, _, corners = rest.partition(";")
        return Signature2D("D2", numbers(cones), numbers(corners))
    return Signature2D(base, numbers(rest))


def euler_characteristic(sig: Signature2D) -> Fraction:
    """χ_orb = χ(X) − Σ(1 − 1/nᵢ) − ½ Σ(1 − 1/mⱼ)."""
    chi = Fraction({"S2": 2, "RP2": 1, "D2": 1}[sig.base])
    chi -= sum((1 - Fraction(1, n) for n in sig.cone), Fraction(0))
    chi -= sum((1 - Fraction(1, m) for m in sig.corner), Fraction(0)) / 2
    return chi


def _normalize_ray(v: Sequence[CycloNumber]) -> Tuple[CycloNumber, ...]:
    """Représentant d'une demi-droite: première coordonnée non nulle de valeur absolue 1."""
    for c in v:
        if not c.is_zero():
            scale = c if real_sign(c) > 0 else -c
            return tuple(x / scale for x in v)
    raise ValueError("zero vector has no direction")


def _point(field, v: Sequence[CycloNumber]) -> Quaternion:
    return Quaternion.from_components(field.zero, *v)


def _check_closed(gamma: List[O3Element]) -> None:
    elements = set(gamma)
    gens: List[O3Element] = []
    generated = {e for e in gamma if e.is_identity()}
    if not generated:
        raise NotClosedError("O(3) image lacks the identity")
    for x in gamma:
        if x in generated:
            continue
        gens.append(x)
        frontier = list(generated)
        while frontier:
            new = []
            for y in frontier:
                for g in gens:
                    z = y.compose(g)
                    if z not in generated:
                        if z not in elements:
                            raise NotClosedError("O(3) image is not closed")
                        generated.add(z)
                        new.append(z)
            frontier = new
    for x in gamma:
        for g in gens:
            if x.compose(g) not in elements:
                raise NotClosedError("O(3) image is not closed")


def quotient_signature(gamma: Iterable[O3Element]) -> Signature2D:
    """
    Signature de S²/Γ.

    Points singuliers: pôles des rotations. Ordre local = nombre de rotations
    fixant le point; coin si un miroir (réflexion de normale ⊥ au point)
    passe par le point, cône sinon. Base: D² s'il existe une réflexion,
    ℝP² s'il n'existe que des éléments renversants sans point fixe, S² sinon.

    Raises:
        NotClosedError: si Γ n'est pas un groupe
    """
    gamma = list(gamma)
    _check_closed(gamma)
    field = gamma[0].rotation.field
    rotations = [g for g in gamma if g.sign > 0]
    reflections = [g for g in gamma if g.is_reflection()]
    reversing = [g for g in gamma if g.sign < 0]

    poles: List[Tuple[CycloNumber, ...]] = []
    seen_poles = set()
    for g in rotations:
        if g.rotation.in_circle() and g.rotation.z1 in (1, -1):
            continue
        axis = _normalize_ray(g.axis())
        for ray in (axis, tuple(-x for x in axis)):
            if ray not in seen_poles:
                seen_poles.add(ray)
                poles.append(ray)

    def image(g: O3Element, ray) -> Tuple[CycloNumber, ...]:
        return _normalize_ray(g.apply(_point(field, ray)).components()[1:])

    cone: List[int] = []
    corner: List[int] = []
    visited = set()
    for ray in sorted(poles, key=lambda r: tuple(x.sort_key() for x in r)):
        if ray in visited:
            continue
        visited |= {image(g, ray) for g in gamma}
        k = sum(1 for g in rotations if image(g, ray) == ray)
        mirror = any(
            sum((a * b for a, b in zip(g.axis(), ray)), field.zero).is_zero() for g in reflections
        )
        if k < 2:
            continue
        (corner if mirror else cone).append(k)

    if reflections:
        base = "D2"
    elif reversing:
        base = "RP2"
    else:
        base = "S2"
    return Signature2D(base, tuple(sorted(cone)), tuple(sorted(corner)))


def base_orbifold(spec: FamilySpec, group: Optional[ProductGroup] = None) -> Signature2D:
    """
    Base de la fibration induite par Hopf.

    Raises:
        NotHopfPreservingError: si la fibration de Hopf n'est pas préservée
    """
    group = group if group is not None else build(spec)
    require_hopf(group, spec)
    signature = quotient_signature(induced_o3_action(group))
    logger.debug(f"Base de {spec.label()}: {signature}")
    return signature


# ============================================================================
# Isométries préservant la fibration
# ============================================================================

@dataclass(frozen=True)
class BaseAction:
    """Action de Isom_p/Isom_f sur la base (composante neutre, π₀, annotation ℤ₂)."""
    identity_component: str
    pi0: FiniteGroupId
    annotation: Optional[str] = None

    def to_json(self) -> Dict:
        return {
            "isom0": self.identity_component,
            "pi0": self.pi0.to_json(),
            "pi0_label": self.pi0.label,
            "annotation": self.annotation,
        }


@dataclass
class FibrationIsometries:
    isom_p: LieDescriptor
    isom_f: LieDescriptor
    base_action: BaseAction


def fibration_isometries(spec: FamilySpec, group: Optional[ProductGroup] = None) -> FibrationIsometries:
    """
    Isom_p, Isom_f et action sur la base, via le normalisateur restreint
    à O(2)* × S³.
    """
    group = group if group is not None else build(spec)
    require_hopf(group, spec)
    analysis = hopf_analysis(group)
    isom_p = analysis.descriptor()
    isom_f, fixing = isom_fiberwise(analysis)
    reps, classes = pi0_quotient(analysis, fixing)
    pi0 = recognize(reps, lambda x, y: classes[analysis.pi0_mul(x, y)])
    identity = {"o2star": "S1", "s3": "SO3"}.get(analysis.right.kind, "Trivial")
    annotation = _annotate(analysis, reps, classes, group) if pi0.order == 2 else None
    return FibrationIsometries(isom_p, isom_f, BaseAction(identity, pi0, annotation))


def isom_p(spec: FamilySpec, group: Optional[ProductGroup] = None) -> LieDescriptor:
    return fibration_isometries(spec, group).isom_p


def isom_f(spec: FamilySpec, group: Optional[ProductGroup] = None) -> LieDescriptor:
    return fibration_isometries(spec, group).isom_f


def base_action(spec: FamilySpec, group: Optional[ProductGroup] = None) -> BaseAction:
    return fibration_isometries(spec, group).base_action


def _annotate(analysis, reps, classes, group: ProductGroup) -> str:
    """
    Nature de l'élément non trivial d'une action ℤ₂: "reflection" si sa
    classe contient une réflexion de S², "rotation" si elle préserve
    l'orientation de S², "antipodal" sinon.
    """
    cosets = analysis.cosets()
    identity = classes[cosets[(analysis.left.component(UnitQuaternion.one(group.field)),
                               analysis.right.component(UnitQuaternion.one(group.field)))]]
    target = next(r for r in reps if r != identity)
    members = [p for p in analysis.passing() if classes[cosets[p]] == target]
    continuous_right = analysis.right.kind != "finite"
    signs = set()
    for a, b in members:
        sign = 1 if a.in_circle() else -1
        signs.add(sign)
        if sign < 0 and (continuous_right or b.real_part().is_zero()):
            return "reflection"
    if signs == {1}:
        return "rotation"
    return "antipodal"


# ============================================================================
# Liste des fibrations
# ============================================================================

SAMPLE_UV = [(u, v) for u in range(1, 6) for v in range(1, 6) if gcd(u, v) == 1 and (u, v) != (1, 1)]


def _computed_fibrations(group: ProductGroup, spec: Optional[FamilySpec]) -> List[Dict]:
    result = []
    for fib in (HOPF, ANTI_HOPF):
        if preserves_fibration(group, fib):
            entry = fib.to_json()
            entry["source"] = "computed"
            if fib.conjugated and spec is not None and spec.family + "bis" in BIS_FAMILIES:
                entry["as"] = f"{display_name(spec.family)}bis"
            result.append(entry)
    general = [
        StandardFibration(u, v, conj)
        for u, v in SAMPLE_UV for conj in (False, True)
    ]
    preserved = [f for f in general if preserves_fibration(group, f)]
    if preserved:
        result.append({
            "fibration": "all z1^u/z2^v and conj(z1)^u/z2^v",
            "source": "computed",
            "sample": [f.name for f in preserved],
        })
    return result


def list_fibrations(spec: FamilySpec, group: Optional[ProductGroup] = None) -> List[Dict]:
    """Fibrations standard préservées, complétées par les coïncidences connues."""
    group = group if group is not None else build(spec)
    result = _computed_fibrations(group, spec)
    hopf = any(f["fibration"] == "hopf" for f in result)
    anti = any(f["fibration"] == "anti-hopf" for f in result)
    if hopf and anti and spec.family in ("10", "12"):
        for entry in result:
            if entry["fibration"] == "anti-hopf":
                entry["equivalent_to_hopf"] = spec.m == spec.n
    for c in coincidences_for(spec):
        result.append({"fibration": c.partner, "source": "coincidence", "note": c.note})
    return result
