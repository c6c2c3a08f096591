"""
Lieu singulier de S³/G.

Chaque isométrie non triviale Φ_{p,q} a pour ensemble fixe le vide ou un
grand cercle, noyau de h ↦ p·h − h·q vu comme application ℝ-linéaire de
ℍ ≅ ℝ⁴. Ce module fournit:
1. fixed_set: Empty / All / Circle (base réduite canonique)
2. singular_locus: arêtes (orbites de cercles, indice, arc ou courbe fermée)
   et sommets (points sur au moins deux cercles, groupe local)
3. is_free_action et complement_seifert_hint
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field
from typing import Dict, List, Optional, Sequence, Tuple

from src.algebra.cyclo import CycloNumber, real_sign
from src.algebra.linalg import coordinates_in_basis, intersect_subspaces, nullspace, rref
from src.algebra.quat import IsometryS3, Quaternion
from src.groups.duval import ProductGroup, so4_image
from src.groups.families import FAMILIES, FamilySpec
from src.geometry.recognize import ICOSA, OCT, TETRA, recognize
from src.logger import get_logger

logger = get_logger("singular")

Vector = Tuple[CycloNumber, ...]

SEIFERT_COMPLEMENT_FAMILIES = {"1", "1p", "2", "3", "4", "5", "6", "7", "8", "9", "34"}


# ============================================================================
# Ensembles fixes
# ============================================================================

@dataclass(frozen=True)
class CircleDescriptor:
    """Plan de ℝ⁴ donné par sa base échelonnée réduite."""
    basis: Tuple[Vector, Vector]
    pivots: Tuple[int, int]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[CycloNumber]]) -> "CircleDescriptor":
        reduced, pivots = rref(rows)
        if len(reduced) != 2:
            raise ValueError(f"expected a plane, got dimension {len(reduced)}")
        return cls(tuple(tuple(r) for r in reduced), tuple(pivots))

    def contains(self, v: Sequence[CycloNumber]) -> bool:
        coords = coordinates_in_basis(v, list(self.pivots))
        zero = v[0].field.zero
        combo = [sum((c * b[i] for c, b in zip(coords, self.basis)), zero) for i in range(4)]
        return all(x == y for x, y in zip(combo, v))

    def to_json(self) -> List[List[List[str]]]:
        return [[[str(c) for c in x.coefficients] for x in row] for row in self.basis]


@dataclass(frozen=True)
class FixedSet:
    kind: str
    circle: Optional[CircleDescriptor] = None


EMPTY = FixedSet("empty")
ALL = FixedSet("all")


def _left_matrix(p: Quaternion) -> List[List[CycloNumber]]:
    a, b, c, d = p.components()
    columns = [(a, b, c, d), (-b, a, d, -c), (-c, -d, a, b), (-d, c, -b, a)]
    return [[columns[col][row] for col in range(4)] for row in range(4)]


def _right_matrix(q: Quaternion) -> List[List[CycloNumber]]:
    a, b, c, d = q.components()
    columns = [(a, b, c, d), (-b, a, -d, c), (-c, d, a, -b), (-d, -c, b, a)]
    return [[columns[col][row] for col in range(4)] for row in range(4)]


def fixed_set(f: IsometryS3) -> FixedSet:
    """
    Ensemble fixe de Φ_{p,q}: solutions de p·h = h·q.

    Raises:
        ValueError: si f renverse l'orientation
    """
    if f.reversing:
        raise ValueError("fixed_set expects an orientation-preserving isometry")
    if f.p.real_part() != f.q.real_part():
        return EMPTY
    field = f.p.field
    lp, rq = _left_matrix(f.p), _right_matrix(f.q)
    system = [[x - y for x, y in zip(a, b)] for a, b in zip(lp, rq)]
    kernel = nullspace(system, field.zero, field.one)
    if len(kernel) == 4:
        return ALL
    if not kernel:
        return EMPTY
    return FixedSet("circle", CircleDescriptor.from_rows(kernel))


# ============================================================================
# Graphe singulier
# ============================================================================

@dataclass
class SingularEdge:
    index: int
    arc: bool
    orbit_size: int
    stabilizer_order: int
    circle: CircleDescriptor

    def to_json(self) -> Dict:
        return {
            "index": self.index,
            "arc": self.arc,
            "orbit_size": self.orbit_size,
            "stabilizer_order": self.stabilizer_order,
        }


@dataclass
class SingularVertex:
    local: str
    orbit_size: int
    germs: int
    edge_indices: List[int] = dataclass_field(default_factory=list)

    def to_json(self) -> Dict:
        return {
            "local": self.local,
            "orbit_size": self.orbit_size,
            "germs": self.germs,
            "edge_indices": sorted(self.edge_indices),
        }


@dataclass
class SingularGraph:
    edges: List[SingularEdge] = dataclass_field(default_factory=list)
    vertices: List[SingularVertex] = dataclass_field(default_factory=list)

    @property
    def is_empty(self) -> bool:
        return not self.edges

    def to_json(self) -> Dict:
        return {
            "edges": [e.to_json() for e in self.edges],
            "vertices": [v.to_json() for v in self.vertices],
        }


def _vector(h: Quaternion) -> Vector:
    return tuple(h.components())


def _apply(f: IsometryS3, v: Sequence[CycloNumber]) -> Vector:
    return _vector(f.apply(Quaternion.from_components(*v)))


def _dot(u: Sequence[CycloNumber], v: Sequence[CycloNumber]) -> CycloNumber:
    total = u[0] * v[0]
    for a, b in zip(u[1:], v[1:]):
        total = total + a * b
    return total


def normalize_ray(v: Sequence[CycloNumber]) -> Vector:
    """Représentant d'une demi-droite: première coordonnée non nulle de valeur absolue 1."""
    for c in v:
        if not c.is_zero():
            scale = c if real_sign(c) > 0 else -c
            return tuple(x / scale for x in v)
    raise ValueError("zero vector has no direction")


def _image_circle(f: IsometryS3, circle: CircleDescriptor) -> CircleDescriptor:
    return CircleDescriptor.from_rows([_apply(f, b) for b in circle.basis])


def _reverses_circle(f: IsometryS3, circle: CircleDescriptor) -> bool:
    """Restriction de f au plan du cercle de déterminant −1."""
    pivots = list(circle.pivots)
    (a, c), (b, d) = (coordinates_in_basis(_apply(f, v), pivots) for v in circle.basis)
    return a * d - b * c == -1


def _local_tag(elements: List[IsometryS3]) -> Optional[str]:
    gid = recognize(elements, lambda x, y: x.compose(y))
    if gid.kind == "cyclic":
        return None
    if gid.kind == "elem_abelian2" and gid.n == 2:
        return "dihedral(2)"
    if gid.kind == "dihedral":
        return f"dihedral({gid.order // 2})"
    if gid == TETRA:
        return "tetra"
    if gid == OCT:
        return "octa"
    if gid == ICOSA:
        return "icosa"
    return gid.label


def _germs(point: Vector, circle: CircleDescriptor) -> Tuple[Vector, Vector]:
    """Directions tangentes ±w du cercle au point (w ⊥ point dans le plan)."""
    for b in circle.basis:
        w = [x - (_dot(b, point) / _dot(point, point)) * y for x, y in zip(b, point)]
        if any(not x.is_zero() for x in w):
            ray = normalize_ray(w)
            return ray, tuple(-x for x in ray)
    raise ValueError("degenerate circle")


def singular_locus(group: ProductGroup) -> SingularGraph:
    """
    Graphe singulier de S³/Φ(G̃), au niveau des orbites sous Φ(G̃).

    Arêtes: orbites de cercles fixes, indice = 1 + nombre d'éléments non
    triviaux fixant le cercle point par point. Sommets: orbites de points
    communs à deux cercles distincts, groupe local = stabilisateur du point.
    """
    image = sorted(so4_image(group), key=lambda x: (x.p.sort_key(), x.q.sort_key()))
    nontrivial = [f for f in image if not f.is_identity()]

    pointwise: Dict[CircleDescriptor, List[IsometryS3]] = {}
    for f in nontrivial:
        fs = fixed_set(f)
        if fs.kind == "circle":
            pointwise.setdefault(fs.circle, []).append(f)
    if not pointwise:
        return SingularGraph()

    circles = sorted(pointwise, key=lambda c: tuple(x.sort_key() for row in c.basis for x in row))

    # Orbites de cercles
    edges: List[SingularEdge] = []
    edge_of: Dict[CircleDescriptor, int] = {}
    for circle in circles:
        if circle in edge_of:
            continue
        orbit = {_image_circle(f, circle) for f in image}
        setwise = [f for f in image if _image_circle(f, circle) == circle]
        arc = any(_reverses_circle(f, circle) for f in setwise)
        for c in orbit:
            edge_of[c] = len(edges)
        edges.append(SingularEdge(
            index=1 + len(pointwise[circle]),
            arc=arc,
            orbit_size=len(orbit),
            stabilizer_order=len(setwise),
            circle=circle,
        ))

    # Sommets: intersections de cercles distincts
    field = group.field
    through: Dict[Vector, List[CircleDescriptor]] = {}
    for i, a in enumerate(circles):
        for b in circles[i + 1:]:
            meet = intersect_subspaces([list(r) for r in a.basis], [list(r) for r in b.basis],
                                       field.zero, field.one)
            if len(meet) != 1:
                continue
            ray = normalize_ray(meet[0])
            for point in (ray, tuple(-x for x in ray)):
                for c in (a, b):
                    if c not in through.setdefault(point, []):
                        through[point].append(c)

    vertices: List[SingularVertex] = []
    seen = set()
    for point in sorted(through, key=lambda v: tuple(x.sort_key() for x in v)):
        if point in seen:
            continue
        orbit = {normalize_ray(_apply(f, point)) for f in image}
        seen |= orbit
        stabilizer = [f for f in image if _apply(f, point) == point]
        tag = _local_tag(stabilizer)
        if tag is None:
            continue
        germs = set()
        for c in through[point]:
            germs.update(_germs(point, c))
        germ_orbits = set()
        for g in sorted(germs, key=lambda v: tuple(x.sort_key() for x in v)):
            germ_orbits.add(min(
                (normalize_ray(_apply(f, g)) for f in stabilizer),
                key=lambda v: tuple(x.sort_key() for x in v),
            ))
        vertices.append(SingularVertex(
            local=tag,
            orbit_size=len(orbit),
            germs=len(germ_orbits),
            edge_indices=[edges[edge_of[c]].index for c in through[point]],
        ))

    edges.sort(key=lambda e: (e.index, e.orbit_size, e.arc))
    vertices.sort(key=lambda v: (v.local, v.orbit_size))
    logger.debug(f"Lieu singulier: {len(edges)} arêtes, {len(vertices)} sommets")
    return SingularGraph(edges, vertices)


def is_free_action(group: ProductGroup) -> bool:
    """Aucune isométrie non triviale n'a de point fixe (p et q de même partie réelle)."""
    return not any(
        f.p.real_part() == f.q.real_part() for f in so4_image(group) if not f.is_identity()
    )


def complement_seifert_hint(spec: FamilySpec) -> bool:
    """Familles dont le complémentaire du lieu singulier est fibré de Seifert."""
    family = FAMILIES[spec.family].swapped_from or spec.family
    return family in SEIFERT_COMPLEMENT_FAMILIES
