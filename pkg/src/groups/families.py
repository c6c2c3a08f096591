"""
Registre des familles de sous-groupes finis de SO(4).

Pour chaque ligne de la classification (familles 1 à 34, variantes primées
et variantes "bis" utilisées pour les fibrations), ce module définit:
1. Les paramètres utilisés (m, n, r, s) et leurs contraintes
2. L'ordre |Φ(G̃)| en forme close
3. La recette de construction: (L, L_K, R, R_K) en étiquettes standard et
   l'isomorphisme φ, donné par images de générateurs, identité ou
   automorphisme nommé
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field
from math import gcd
from typing import Callable, Dict, List, Optional, Tuple

from src.algebra.cyclo import CycloField, root_of_unity
from src.algebra.quat import UnitQuaternion
from src.exceptions import ConstraintViolation
from src.groups.groups3 import (
    BIN_ICOSA,
    BIN_OCTA,
    BIN_TETRA,
    BinDihedral,
    Cyclic,
    GroupTag,
    normalizer_conductor,
    octa_generator,
    omega,
)

PARAM_NAMES = ("m", "n", "r", "s")

# Familles dont les variantes primées s'écrivent avec un suffixe "p"
FAMILY_ORDER = [
    "1", "1p", "2", "3", "4", "5", "6", "7", "8", "9", "10", "11", "11p",
    "12", "13", "14", "15", "16", "17", "18", "19", "20", "21", "21p", "22",
    "23", "24", "25", "26", "26p", "26pp", "27", "28", "29", "30", "31",
    "31p", "32", "32p", "33", "33p", "34",
]
BIS_FAMILIES = ["2bis", "3bis", "4bis", "13bis", "34bis"]


def display_name(family: str) -> str:
    """Nom typographique: 1p → 1′, 26pp → 26″."""
    if family.endswith("pp"):
        return family[:-2] + "″"
    if family.endswith("p"):
        return family[:-1] + "′"
    return family


@dataclass(frozen=True)
class FamilySpec:
    """Famille et paramètres, ex. FamilySpec("11", m=2, n=3, r=4, s=1)."""
    family: str
    m: Optional[int] = None
    n: Optional[int] = None
    r: Optional[int] = None
    s: Optional[int] = None

    @classmethod
    def create(cls, family: str, **params) -> "FamilySpec":
        """
        Normalise et valide une spécification.

        Les paramètres utilisés par la famille prennent 1 par défaut, les
        autres sont ignorés.

        Raises:
            ConstraintViolation: famille inconnue ou contrainte violée
        """
        family = str(family)
        if family not in FAMILIES:
            raise ConstraintViolation(family, "unknown family identifier")
        fam = FAMILIES[family]
        values = {}
        for name in PARAM_NAMES:
            value = params.get(name)
            if name in fam.params:
                values[name] = 1 if value is None else int(value)
        spec = cls(family, **values)
        fam.validate(spec)
        return spec

    @classmethod
    def from_json(cls, data: Dict) -> "FamilySpec":
        return cls.create(data["family"], **{k: data.get(k) for k in PARAM_NAMES})

    def to_json(self) -> Dict:
        out: Dict = {"family": self.family}
        for name in PARAM_NAMES:
            value = getattr(self, name)
            if value is not None:
                out[name] = value
        return out

    @property
    def definition(self) -> "Family":
        return FAMILIES[self.family]

    def label(self) -> str:
        params = ",".join(f"{k}={v}" for k, v in self.to_json().items() if k != "family")
        name = display_name(self.family)
        return f"{name}({params})" if params else name


@dataclass
class Recipe:
    """
    Données de construction d'un groupe.

    phi_mode: "product" (L=L_K, R=R_K), "identity" (R=L, R_K=L_K, φ=id),
    "images" (φ défini par les images des générateurs de L/L_K),
    "automorphism" (φ induit par un automorphisme nommé de L).
    """
    L: GroupTag
    L_K: GroupTag
    R: GroupTag
    R_K: GroupTag
    phi_mode: str
    images: List[Tuple[UnitQuaternion, UnitQuaternion]] = dataclass_field(default_factory=list)
    automorphism: Optional[str] = None
    search_images: List[UnitQuaternion] = dataclass_field(default_factory=list)


@dataclass
class Family:
    name: str
    params: Tuple[str, ...]
    order: Callable[[FamilySpec], int]
    recipe: Callable[[FamilySpec, CycloField], Recipe]
    constraints: List[Tuple[Callable[[FamilySpec], bool], str]] = dataclass_field(default_factory=list)
    swapped_from: Optional[str] = None

    def validate(self, spec: FamilySpec) -> None:
        for predicate, text in self.constraints:
            if not predicate(spec):
                raise ConstraintViolation(display_name(self.name), text)

    def tags(self, spec: FamilySpec) -> Tuple[GroupTag, GroupTag, GroupTag, GroupTag]:
        rec = self.recipe(spec, None)
        return rec.L, rec.L_K, rec.R, rec.R_K


# ============================================================================
# Générateurs
# ============================================================================

def e(field: CycloField, k: int, n: int) -> UnitQuaternion:
    """e^{2πik/n} vu dans S¹ ⊂ S³."""
    return UnitQuaternion(root_of_unity(field, k, n), field.zero)


def jq(field: CycloField) -> UnitQuaternion:
    return UnitQuaternion(field.zero, field.one)


def _lazy(field: Optional[CycloField], build: Callable[[CycloField], list]) -> list:
    # les étiquettes seules suffisent quand field est None
    return build(field) if field is not None else []


def _odd(x: int) -> bool:
    return x % 2 == 1


def _even(x: int) -> bool:
    return x % 2 == 0


C = Cyclic
D = BinDihedral
T, O, I = BIN_TETRA, BIN_OCTA, BIN_ICOSA
Q8 = BinDihedral(8)


def _product(l: GroupTag, r: GroupTag) -> Callable:
    return lambda sp, f: Recipe(l, l, r, r, "product")


def _identity(l: GroupTag, k: GroupTag) -> Callable:
    return lambda sp, f: Recipe(l, k, l, k, "identity")


def _gcd_rs(sp: FamilySpec) -> bool:
    return gcd(sp.s, sp.r) == 1


MNRS = ("m", "n", "r", "s")

FAMILIES: Dict[str, Family] = {}


def _register(family: Family) -> None:
    FAMILIES[family.name] = family


# ---- Familles 1 à 9: L cyclique --------------------------------------------

_register(Family(
    "1", MNRS, lambda sp: 2 * sp.m * sp.n * sp.r,
    lambda sp, f: Recipe(
        C(2 * sp.m * sp.r), C(2 * sp.m), C(2 * sp.n * sp.r), C(2 * sp.n), "images",
        _lazy(f, lambda f: [(e(f, 1, 2 * sp.m * sp.r), e(f, sp.s, 2 * sp.n * sp.r))]),
    ),
    [(lambda sp: min(sp.m, sp.n, sp.r, sp.s) >= 1, "m, n, r, s >= 1"),
     (_gcd_rs, "gcd(s,r)=1")],
))
_register(Family(
    "1p", MNRS, lambda sp: sp.m * sp.n * sp.r // 2,
    lambda sp, f: Recipe(
        C(sp.m * sp.r), C(sp.m), C(sp.n * sp.r), C(sp.n), "images",
        _lazy(f, lambda f: [(e(f, 1, sp.m * sp.r), e(f, sp.s, sp.n * sp.r))]),
    ),
    [(lambda sp: min(sp.m, sp.n, sp.r, sp.s) >= 1, "m, n, r, s >= 1"),
     (lambda sp: _odd(sp.m) and _odd(sp.n), "gcd(2,m)=1 gcd(2,n)=1"),
     (lambda sp: _even(sp.r), "gcd(2,r)=2"),
     (lambda sp: _odd(sp.s), "s odd"),
     (_gcd_rs, "gcd(s,r)=1")],
))
_register(Family(
    "2", ("m", "n"), lambda sp: 4 * sp.m * sp.n,
    lambda sp, f: Recipe(C(2 * sp.m), C(2 * sp.m), D(4 * sp.n), D(4 * sp.n), "product"),
    [(lambda sp: sp.m >= 1, "m >= 1"), (lambda sp: sp.n >= 2, "n >= 2")],
))
_register(Family(
    "3", ("m", "n"), lambda sp: 4 * sp.m * sp.n,
    lambda sp, f: Recipe(
        C(4 * sp.m), C(2 * sp.m), D(4 * sp.n), C(2 * sp.n), "images",
        _lazy(f, lambda f: [(e(f, 1, 4 * sp.m), jq(f))]),
    ),
    [(lambda sp: sp.m >= 1, "m >= 1"), (lambda sp: sp.n >= 2, "n >= 2")],
))
_register(Family(
    "4", ("m", "n"), lambda sp: 8 * sp.m * sp.n,
    lambda sp, f: Recipe(
        C(4 * sp.m), C(2 * sp.m), D(8 * sp.n), D(4 * sp.n), "images",
        _lazy(f, lambda f: [(e(f, 1, 4 * sp.m), e(f, 1, 4 * sp.n))]),
    ),
    [(lambda sp: sp.m >= 1, "m >= 1"), (lambda sp: sp.n >= 2, "n >= 2")],
))
_register(Family(
    "5", ("m",), lambda sp: 24 * sp.m,
    lambda sp, f: Recipe(C(2 * sp.m), C(2 * sp.m), T, T, "product"),
    [(lambda sp: sp.m >= 1, "m >= 1")],
))
_register(Family(
    "6", ("m",), lambda sp: 24 * sp.m,
    lambda sp, f: Recipe(
        C(6 * sp.m), C(2 * sp.m), T, Q8, "images",
        _lazy(f, lambda f: [(e(f, 1, 6 * sp.m), omega(f))]),
    ),
    [(lambda sp: sp.m >= 1, "m >= 1")],
))
_register(Family(
    "7", ("m",), lambda sp: 48 * sp.m,
    lambda sp, f: Recipe(C(2 * sp.m), C(2 * sp.m), O, O, "product"),
    [(lambda sp: sp.m >= 1, "m >= 1")],
))
_register(Family(
    "8", ("m",), lambda sp: 48 * sp.m,
    lambda sp, f: Recipe(
        C(4 * sp.m), C(2 * sp.m), O, T, "images",
        _lazy(f, lambda f: [(e(f, 1, 4 * sp.m), octa_generator(f))]),
    ),
    [(lambda sp: sp.m >= 1, "m >= 1")],
))
_register(Family(
    "9", ("m",), lambda sp: 120 * sp.m,
    lambda sp, f: Recipe(C(2 * sp.m), C(2 * sp.m), I, I, "product"),
    [(lambda sp: sp.m >= 1, "m >= 1")],
))

# ---- Familles 10 à 19: L diédrale binaire ----------------------------------

_register(Family(
    "10", ("m", "n"), lambda sp: 8 * sp.m * sp.n,
    lambda sp, f: Recipe(D(4 * sp.m), D(4 * sp.m), D(4 * sp.n), D(4 * sp.n), "product"),
    [(lambda sp: sp.m >= 2 and sp.n >= 2, "m >= 2, n >= 2")],
))
_register(Family(
    "11", MNRS, lambda sp: 4 * sp.m * sp.n * sp.r,
    lambda sp, f: Recipe(
        D(4 * sp.m * sp.r), C(2 * sp.m), D(4 * sp.n * sp.r), C(2 * sp.n), "images",
        _lazy(f, lambda f: [(e(f, 1, 2 * sp.m * sp.r), e(f, sp.s, 2 * sp.n * sp.r)),
                            (jq(f), jq(f))]),
    ),
    [(lambda sp: min(sp.m, sp.n, sp.r, sp.s) >= 1, "m, n, r, s >= 1"),
     (lambda sp: sp.m * sp.r >= 2 and sp.n * sp.r >= 2, "mr >= 2, nr >= 2"),
     (_gcd_rs, "gcd(s,r)=1")],
))
_register(Family(
    "11p", MNRS, lambda sp: sp.m * sp.n * sp.r,
    lambda sp, f: Recipe(
        D(2 * sp.m * sp.r), C(sp.m), D(2 * sp.n * sp.r), C(sp.n), "images",
        _lazy(f, lambda f: [(e(f, 1, sp.m * sp.r), e(f, sp.s, sp.n * sp.r)),
                            (jq(f), jq(f))]),
    ),
    [(lambda sp: min(sp.m, sp.n, sp.r, sp.s) >= 1, "m, n, r, s >= 1"),
     (lambda sp: _odd(sp.m) and _odd(sp.n), "gcd(2,m)=1 gcd(2,n)=1"),
     (lambda sp: _even(sp.r), "gcd(2,r)=2"),
     (lambda sp: _odd(sp.s), "s odd"),
     (lambda sp: sp.m * sp.r >= 3 and sp.n * sp.r >= 3, "mr >= 3, nr >= 3"),
     (_gcd_rs, "gcd(s,r)=1")],
))
_register(Family(
    "12", ("m", "n"), lambda sp: 16 * sp.m * sp.n,
    lambda sp, f: Recipe(
        D(8 * sp.m), D(4 * sp.m), D(8 * sp.n), D(4 * sp.n), "images",
        _lazy(f, lambda f: [(e(f, 1, 4 * sp.m), e(f, 1, 4 * sp.n))]),
    ),
    [(lambda sp: sp.m >= 2 and sp.n >= 2, "m >= 2, n >= 2")],
))
_register(Family(
    "13", ("m", "n"), lambda sp: 8 * sp.m * sp.n,
    lambda sp, f: Recipe(
        D(8 * sp.m), D(4 * sp.m), D(4 * sp.n), C(2 * sp.n), "images",
        _lazy(f, lambda f: [(e(f, 1, 4 * sp.m), jq(f))]),
    ),
    [(lambda sp: sp.m >= 2 and sp.n >= 2, "m >= 2, n >= 2")],
))
_register(Family(
    "14", ("m",), lambda sp: 48 * sp.m,
    lambda sp, f: Recipe(D(4 * sp.m), D(4 * sp.m), T, T, "product"),
    [(lambda sp: sp.m >= 2, "m >= 2")],
))
_register(Family(
    "15", ("m",), lambda sp: 96 * sp.m,
    lambda sp, f: Recipe(D(4 * sp.m), D(4 * sp.m), O, O, "product"),
    [(lambda sp: sp.m >= 2, "m >= 2")],
))
_register(Family(
    "16", ("m",), lambda sp: 48 * sp.m,
    lambda sp, f: Recipe(
        D(4 * sp.m), C(2 * sp.m), O, T, "images",
        _lazy(f, lambda f: [(jq(f), octa_generator(f)),
                            (e(f, 1, 2 * sp.m), UnitQuaternion.one(f))]),
    ),
    [(lambda sp: sp.m >= 2, "m >= 2")],
))
_register(Family(
    "17", ("m",), lambda sp: 96 * sp.m,
    lambda sp, f: Recipe(
        D(8 * sp.m), D(4 * sp.m), O, T, "images",
        _lazy(f, lambda f: [(e(f, 1, 4 * sp.m), octa_generator(f))]),
    ),
    [(lambda sp: sp.m >= 2, "m >= 2")],
))
_register(Family(
    "18", ("m",), lambda sp: 48 * sp.m,
    lambda sp, f: Recipe(
        D(12 * sp.m), C(2 * sp.m), O, Q8, "images",
        _lazy(f, lambda f: [(e(f, 1, 6 * sp.m), omega(f))]),
        search_images=_lazy(f, lambda f: [jq(f)]),
    ),
    [(lambda sp: sp.m >= 1, "m >= 1")],
))
_register(Family(
    "19", ("m",), lambda sp: 240 * sp.m,
    lambda sp, f: Recipe(D(4 * sp.m), D(4 * sp.m), I, I, "product"),
    [(lambda sp: sp.m >= 2, "m >= 2")],
))

# ---- Familles 20 à 32: L, R polyédrales -------------------------------------

_register(Family("20", (), lambda sp: 288, _product(T, T)))
_register(Family("21", (), lambda sp: 24, _identity(T, C(2))))
_register(Family("21p", (), lambda sp: 12, _identity(T, C(1))))
_register(Family("22", (), lambda sp: 96, _identity(T, Q8)))
_register(Family("23", (), lambda sp: 576, _product(T, O)))
_register(Family("24", (), lambda sp: 1440, _product(T, I)))
_register(Family("25", (), lambda sp: 1152, _product(O, O)))
_register(Family("26", (), lambda sp: 48, _identity(O, C(2))))
_register(Family("26p", (), lambda sp: 24, _identity(O, C(1))))
_register(Family(
    "26pp", (), lambda sp: 24,
    lambda sp, f: Recipe(O, C(1), O, C(1), "automorphism", automorphism="sign_outside_tetra"),
))
_register(Family("27", (), lambda sp: 192, _identity(O, Q8)))
_register(Family("28", (), lambda sp: 576, _identity(O, T)))
_register(Family("29", (), lambda sp: 2880, _product(O, I)))
_register(Family("30", (), lambda sp: 7200, _product(I, I)))
_register(Family("31", (), lambda sp: 120, _identity(I, C(2))))
_register(Family("31p", (), lambda sp: 60, _identity(I, C(1))))
_register(Family(
    "32", (), lambda sp: 120,
    lambda sp, f: Recipe(I, C(2), I, C(2), "automorphism", automorphism="outer_icosa"),
))
_register(Family(
    "32p", (), lambda sp: 60,
    lambda sp, f: Recipe(I, C(1), I, C(1), "automorphism", automorphism="outer_icosa"),
))

# ---- Familles 33, 33′, 34 --------------------------------------------------

_register(Family(
    "33", ("m", "n"), lambda sp: 8 * sp.m * sp.n,
    lambda sp, f: Recipe(
        D(8 * sp.m), C(2 * sp.m), D(8 * sp.n), C(2 * sp.n), "images",
        _lazy(f, lambda f: [(e(f, 1, 4 * sp.m), jq(f)), (jq(f), e(f, 1, 4 * sp.n))]),
    ),
    [(lambda sp: sp.m != 1 and sp.n != 1, "m≠1 n≠1"),
     (lambda sp: sp.m >= 2 and sp.n >= 2, "m >= 2, n >= 2")],
))
_register(Family(
    "33p", ("m", "n"), lambda sp: 4 * sp.m * sp.n,
    lambda sp, f: Recipe(
        D(8 * sp.m), C(sp.m), D(8 * sp.n), C(sp.n), "images",
        _lazy(f, lambda f: [(e(f, 1, 4 * sp.m), jq(f)), (jq(f), e(f, 1, 4 * sp.n))]),
    ),
    [(lambda sp: sp.m != 1 and sp.n != 1, "m≠1 n≠1"),
     (lambda sp: _odd(sp.m) and _odd(sp.n), "gcd(2,m)=1 gcd(2,n)=1")],
))
_register(Family(
    "34", ("m", "n"), lambda sp: 2 * sp.m * sp.n,
    lambda sp, f: Recipe(
        C(4 * sp.m), C(sp.m), D(4 * sp.n), C(sp.n), "images",
        _lazy(f, lambda f: [(e(f, 1, 4 * sp.m), jq(f))]),
    ),
    [(lambda sp: _odd(sp.m) and _odd(sp.n), "gcd(2,m)=1 gcd(2,n)=1"),
     (lambda sp: sp.n >= 3, "n >= 3")],
))


# ---- Variantes "bis": facteurs échangés -------------------------------------

def _swapped_spec(spec: FamilySpec, base: str) -> FamilySpec:
    return FamilySpec(base, m=spec.n, n=spec.m)


def _make_bis(name: str, base: str) -> Family:
    base_family = FAMILIES[base]

    def recipe(sp: FamilySpec, f: Optional[CycloField]) -> Recipe:
        rec = base_family.recipe(_swapped_spec(sp, base), f)
        return Recipe(
            rec.R, rec.R_K, rec.L, rec.L_K, rec.phi_mode,
            [(b, a) for a, b in rec.images], rec.automorphism, rec.search_images,
        )

    def constraint(sp: FamilySpec) -> bool:
        try:
            base_family.validate(_swapped_spec(sp, base))
        except ConstraintViolation:
            return False
        return True

    mirrored = "; ".join(text.replace("m", "#").replace("n", "m").replace("#", "n")
                         for _, text in base_family.constraints)
    return Family(
        name, ("m", "n"), lambda sp: base_family.order(_swapped_spec(sp, base)),
        recipe, [(constraint, mirrored)], swapped_from=base,
    )


for _bis in BIS_FAMILIES:
    _register(_make_bis(_bis, _bis[:-3]))


# ============================================================================
# Conducteur
# ============================================================================

def required_conductor(spec: FamilySpec) -> int:
    """
    Conducteur couvrant L, L_K, R, R_K, leurs normalisateurs et les images
    des générateurs.
    """
    result = 4
    for tag in spec.definition.tags(spec):
        k = normalizer_conductor(tag)
        result = result * k // gcd(result, k)
    return result


def enumerate_specs(family: str, max_param: int, max_r: int = 5) -> List[FamilySpec]:
    """Toutes les spécifications valides avec m, n ≤ max_param et r, s ≤ max_r."""
    fam = FAMILIES[family]
    ranges = {
        "m": range(1, max_param + 1),
        "n": range(1, max_param + 1),
        "r": range(1, max_r + 1),
        "s": range(1, max_r + 1),
    }
    combos: List[Dict[str, int]] = [{}]
    for name in fam.params:
        combos = [dict(c, **{name: v}) for c in combos for v in ranges[name]]
    specs = []
    for combo in combos:
        if "s" in combo and "r" in combo and combo["s"] > max(combo["r"], 1):
            continue
        try:
            specs.append(FamilySpec.create(family, **combo))
        except ConstraintViolation:
            continue
    return specs
