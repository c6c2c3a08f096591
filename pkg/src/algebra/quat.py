"""
Quaternions sur un corps cyclotomique et isométries de S³.

Modèle: H = {z₁ + z₂ j}, avec z₁, z₂ ∈ Q(ζ_N). Ce module fournit:
1. Quaternion / UnitQuaternion: produit, conjugaison, composantes réelles
2. IsometryS3: Φ_{p,q}(h) = p h q⁻¹ et Φ̄_{p,q}(h) = p h̄ q⁻¹, stockées sous
   forme (p, q, drapeau) avec un représentant canonique de (p,q) ~ (−p,−q)
3. La sérialisation JSON des quaternions (coefficients "p/q")
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple

from src.algebra.cyclo import CycloField, CycloNumber, imaginary_unit
from src.exceptions import FieldMismatchError, OrbifoldError


class Quaternion:
    """
    Quaternion z1 + z2·j.

    Produit: (a₁, a₂)(b₁, b₂) = (a₁b₁ − a₂·b̄₂, a₁b₂ + a₂·b̄₁).
    """

    __slots__ = ("z1", "z2", "_hash")

    def __init__(self, z1: CycloNumber, z2: CycloNumber):
        if z1.field.conductor != z2.field.conductor:
            raise FieldMismatchError("quaternion coordinates in different fields")
        self.z1 = z1
        self.z2 = z2
        self._hash = None

    @property
    def field(self) -> CycloField:
        return self.z1.field

    # ------------------------------------------------------------------
    # Constantes
    # ------------------------------------------------------------------

    @classmethod
    def from_components(cls, a, b, c, d) -> "Quaternion":
        """a + bi + cj + dk (composantes réelles du corps)."""
        field = a.field
        i = imaginary_unit(field)
        return cls(a + b * i, c + d * i)

    @classmethod
    def one(cls, field: CycloField) -> "Quaternion":
        return cls(field.one, field.zero)

    @classmethod
    def basis_i(cls, field: CycloField) -> "Quaternion":
        return cls(imaginary_unit(field), field.zero)

    @classmethod
    def basis_j(cls, field: CycloField) -> "Quaternion":
        return cls(field.zero, field.one)

    @classmethod
    def basis_k(cls, field: CycloField) -> "Quaternion":
        return cls(field.zero, imaginary_unit(field))

    # ------------------------------------------------------------------
    # Arithmétique
    # ------------------------------------------------------------------

    def _result_type(self, other) -> type:
        if isinstance(self, UnitQuaternion) and isinstance(other, UnitQuaternion):
            return UnitQuaternion
        return Quaternion

    def __mul__(self, other: "Quaternion") -> "Quaternion":
        if isinstance(other, (int, Fraction, CycloNumber)) and not isinstance(other, Quaternion):
            return Quaternion(self.z1 * other, self.z2 * other)
        a1, a2, b1, b2 = self.z1, self.z2, other.z1, other.z2
        cls = self._result_type(other)
        return cls(a1 * b1 - a2 * b2.conj(), a1 * b2 + a2 * b1.conj())

    def __add__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.z1 + other.z1, self.z2 + other.z2)

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.z1 - other.z1, self.z2 - other.z2)

    def __neg__(self) -> "Quaternion":
        return type(self)(-self.z1, -self.z2)

    def conj(self) -> "Quaternion":
        """q̄ = z̄₁ − z₂ j."""
        return type(self)(self.z1.conj(), -self.z2)

    def norm_squared(self) -> CycloNumber:
        return self.z1 * self.z1.conj() + self.z2 * self.z2.conj()

    def inverse(self) -> "Quaternion":
        if isinstance(self, UnitQuaternion):
            return self.conj()
        n = self.norm_squared()
        c = self.conj()
        return Quaternion(c.z1 / n, c.z2 / n)

    def is_unit(self) -> bool:
        return self.norm_squared() == 1

    # ------------------------------------------------------------------
    # Composantes réelles
    # ------------------------------------------------------------------

    def components(self) -> Tuple[CycloNumber, CycloNumber, CycloNumber, CycloNumber]:
        """(a, b, c, d) avec q = a + bi + cj + dk."""
        i = imaginary_unit(self.field)
        half = Fraction(1, 2)
        a = (self.z1 + self.z1.conj()) * half
        b = -(i * (self.z1 - self.z1.conj())) * half
        c = (self.z2 + self.z2.conj()) * half
        d = -(i * (self.z2 - self.z2.conj())) * half
        return a, b, c, d

    def real_part(self) -> CycloNumber:
        return (self.z1 + self.z1.conj()) * Fraction(1, 2)

    def in_circle(self) -> bool:
        """Appartient à S¹ = {z₂ = 0}."""
        return self.z2.is_zero()

    def in_circle_j(self) -> bool:
        """Appartient à S¹j = {z₁ = 0}."""
        return self.z1.is_zero()

    def in_o2_star(self) -> bool:
        return self.in_circle() or self.in_circle_j()

    # ------------------------------------------------------------------
    # Égalité, ordre canonique
    # ------------------------------------------------------------------

    def sort_key(self):
        return (self.z1.sort_key(), self.z2.sort_key())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Quaternion):
            return NotImplemented
        return self.z1 == other.z1 and self.z2 == other.z2

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.z1, self.z2))
        return self._hash

    def __getstate__(self):
        return (self.z1, self.z2)

    def __setstate__(self, state):
        self.z1, self.z2 = state
        self._hash = None

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.z1!r}, {self.z2!r})"


class UnitQuaternion(Quaternion):
    """Quaternion de norme 1 (élément de S³)."""

    __slots__ = ()

    @classmethod
    def checked(cls, q: Quaternion) -> "UnitQuaternion":
        if not q.is_unit():
            raise OrbifoldError(f"{q!r} is not a unit quaternion")
        return cls(q.z1, q.z2)

    @classmethod
    def one(cls, field: CycloField) -> "UnitQuaternion":
        return cls(field.one, field.zero)


def unit(z1: CycloNumber, z2: CycloNumber) -> UnitQuaternion:
    return UnitQuaternion.checked(Quaternion(z1, z2))


def quaternion_sign_positive(p: Quaternion) -> bool:
    """Premier coefficient rationnel non nul (z1 puis z2) positif."""
    for x in (p.z1, p.z2):
        for c in x.num:
            if c:
                return c > 0
    return True


class IsometryS3:
    """
    Isométrie de S³ sous forme (p, q, reversing).

    reversing=False: h ↦ p h q⁻¹; reversing=True: h ↦ p h̄ q⁻¹.
    Le couple stocké est le représentant canonique de ±(p, q).
    """

    __slots__ = ("p", "q", "reversing", "_hash")

    def __init__(self, p: UnitQuaternion, q: UnitQuaternion, reversing: bool = False):
        if not quaternion_sign_positive(p):
            p, q = -p, -q
        self.p = p
        self.q = q
        self.reversing = bool(reversing)
        self._hash = None

    @classmethod
    def identity(cls, field: CycloField) -> "IsometryS3":
        one = UnitQuaternion.one(field)
        return cls(one, one, False)

    def apply(self, h: Quaternion) -> Quaternion:
        if h.field.conductor != self.p.field.conductor:
            raise FieldMismatchError("point and isometry in different fields")
        x = h.conj() if self.reversing else h
        result = self.p * x * self.q.conj()
        return type(h)(result.z1, result.z2) if isinstance(h, UnitQuaternion) else result

    def compose(self, other: "IsometryS3") -> "IsometryS3":
        """self ∘ other."""
        a, b, c, d = self.p, self.q, other.p, other.q
        if not self.reversing:
            return IsometryS3(a * c, b * d, other.reversing)
        return IsometryS3(a * d, b * c, not other.reversing)

    def inverse(self) -> "IsometryS3":
        if not self.reversing:
            return IsometryS3(self.p.conj(), self.q.conj(), False)
        return IsometryS3(self.q.conj(), self.p.conj(), True)

    def is_identity(self) -> bool:
        return (not self.reversing) and self.p == self.q and (self.p.z2.is_zero()) and self.p.z1 == 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, IsometryS3):
            return NotImplemented
        return self.reversing == other.reversing and self.p == other.p and self.q == other.q

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.p, self.q, self.reversing))
        return self._hash

    def __getstate__(self):
        return (self.p, self.q, self.reversing)

    def __setstate__(self, state):
        self.p, self.q, self.reversing = state
        self._hash = None

    def __repr__(self) -> str:
        name = "PhiBar" if self.reversing else "Phi"
        return f"{name}({self.p!r}, {self.q!r})"


def compose(f: IsometryS3, g: IsometryS3) -> IsometryS3:
    return f.compose(g)


def inverse(f: IsometryS3) -> IsometryS3:
    return f.inverse()


def apply(f: IsometryS3, h: Quaternion) -> Quaternion:
    return f.apply(h)


# ----------------------------------------------------------------------
# Sérialisation
# ----------------------------------------------------------------------

def number_to_json(x: CycloNumber) -> List[str]:
    return [str(c) for c in x.coefficients]


def number_from_json(field: CycloField, data: Sequence[str]) -> CycloNumber:
    return field.from_coefficients([Fraction(c) for c in data])


def quaternion_to_json(q: Quaternion) -> List[List[str]]:
    return [number_to_json(q.z1), number_to_json(q.z2)]


def quaternion_from_json(field: CycloField, data) -> UnitQuaternion:
    return UnitQuaternion(number_from_json(field, data[0]), number_from_json(field, data[1]))
