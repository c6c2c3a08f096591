"""
Arithmétique exacte dans les corps cyclotomiques Q(ζ_N).

Ce module fournit:
1. CycloField: corps de conducteur N (4 | N), avec les tables de réduction
   modulo le N-ième polynôme cyclotomique
2. CycloNumber: élément exact, vecteur de coefficients rationnels en forme
   canonique (numérateurs entiers + dénominateur commun)
3. Les constantes utilisées par les groupes: racines de l'unité, √2, τ
4. Le signe exact des nombres réels (pour les calculs d'orientation)

L'égalité est celle des vecteurs canoniques; aucun calcul de groupe ne
passe par des flottants (to_float sert uniquement au diagnostic).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, Iterable, List, Sequence, Tuple, Union

import numpy as np

from src.exceptions import ConductorMismatchError, FieldMismatchError, OrbifoldError

Rational = Union[int, Fraction]


def totient(n: int) -> int:
    """Indicatrice d'Euler."""
    result, k, m = n, 2, n
    while k * k <= m:
        if m % k == 0:
            while m % k == 0:
                m //= k
            result -= result // k
        k += 1
    if m > 1:
        result -= result // m
    return result


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _poly_div_exact(num: List[int], den: List[int]) -> List[int]:
    # coefficients du degré 0 vers le degré max, den unitaire
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        out[k] = c
        if c:
            for t, d in enumerate(den):
                num[k + t] -= c * d
    if any(num[: len(den) - 1]):
        raise OrbifoldError("non-exact cyclotomic division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> Tuple[int, ...]:
    """
    Φ_n à coefficients entiers, du degré 0 au degré φ(n).

    Calculé par Φ_n = (x^n − 1) / Π_{d | n, d < n} Φ_d.
    """
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_div_exact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


class CycloField:
    """
    Corps cyclotomique Q(ζ_N) avec 4 | N.

    Les puissances ζ^k (0 ≤ k < N) sont précalculées en vecteurs entiers
    réduits modulo Φ_N; la multiplication et les automorphismes de Galois
    se ramènent à des combinaisons de ces vecteurs.
    """

    def __init__(self, conductor: int):
        if conductor < 4 or conductor % 4:
            raise ConductorMismatchError(f"conductor {conductor} must be a multiple of 4")
        self.conductor = conductor
        self.degree = totient(conductor)
        self.poly = cyclotomic_polynomial(conductor)
        self._powers = self._reduction_table()
        self.zero = CycloNumber(self, (0,) * self.degree, 1)
        self.one = self.from_rational(1)

    def _reduction_table(self) -> List[Tuple[int, ...]]:
        d, n = self.degree, self.conductor
        table = []
        current = [1] + [0] * (d - 1)
        for _ in range(n):
            table.append(tuple(current))
            # multiplication par x puis réduction du terme de degré d
            top = current[-1]
            current = [0] + current[:-1]
            if top:
                for t in range(d):
                    current[t] -= top * self.poly[t]
        return table

    def __reduce__(self):
        return (make_field, (self.conductor,))

    def __eq__(self, other) -> bool:
        return isinstance(other, CycloField) and other.conductor == self.conductor

    def __hash__(self) -> int:
        return hash(("CycloField", self.conductor))

    def __repr__(self) -> str:
        return f"<CycloField(conductor={self.conductor}, degree={self.degree})>"

    # ------------------------------------------------------------------
    # Constructeurs
    # ------------------------------------------------------------------

    def from_rational(self, value: Rational) -> "CycloNumber":
        value = Fraction(value)
        num = (value.numerator,) + (0,) * (self.degree - 1)
        return CycloNumber(self, num, value.denominator)

    def zeta(self, k: int) -> "CycloNumber":
        """ζ_N^k."""
        return CycloNumber(self, self._powers[k % self.conductor], 1)

    def from_coefficients(self, coeffs: Sequence[Rational]) -> "CycloNumber":
        if len(coeffs) != self.degree:
            raise FieldMismatchError(
                f"expected {self.degree} coefficients, got {len(coeffs)}"
            )
        fracs = [Fraction(c) for c in coeffs]
        den = 1
        for f in fracs:
            den = _lcm(den, f.denominator)
        num = tuple(f.numerator * (den // f.denominator) for f in fracs)
        return CycloNumber(self, num, den)

    # ------------------------------------------------------------------
    # Réduction
    # ------------------------------------------------------------------

    def _reduce_exponents(self, terms: Dict[int, int]) -> Tuple[int, ...]:
        """Somme Σ c_k ζ^k (exposants quelconques) en vecteur canonique."""
        out = [0] * self.degree
        n = self.conductor
        for k, c in terms.items():
            if c:
                vec = self._powers[k % n]
                for t, v in enumerate(vec):
                    if v:
                        out[t] += c * v
        return tuple(out)

    def _mul_vectors(self, a: Sequence[int], b: Sequence[int]) -> Tuple[int, ...]:
        d = self.degree
        conv = [0] * (2 * d - 1)
        for s, x in enumerate(a):
            if x:
                for t, y in enumerate(b):
                    if y:
                        conv[s + t] += x * y
        out = conv[:d]
        for k in range(d, 2 * d - 1):
            c = conv[k]
            if c:
                vec = self._powers[k]
                for t, v in enumerate(vec):
                    if v:
                        out[t] += c * v
        return tuple(out)

    def _galois_vector(self, a: Sequence[int], t: int) -> Tuple[int, ...]:
        return self._reduce_exponents({(t * k): c for k, c in enumerate(a) if c})

    def units_mod_conductor(self) -> List[int]:
        return [t for t in range(1, self.conductor) if gcd(t, self.conductor) == 1]


@lru_cache(maxsize=None)
def make_field(n: int) -> CycloField:
    """
    Corps de conducteur lcm(n, 4).

    Args:
        n: Conducteur demandé (≥ 1)
    """
    if n < 1:
        raise ConductorMismatchError(f"conductor must be positive, got {n}")
    return CycloField(_lcm(n, 4))


class CycloNumber:
    """
    Élément exact de Q(ζ_N): Σ num[k]/den · ζ^k, 0 ≤ k < φ(N).

    Forme canonique: den > 0 et pgcd(num, den) = 1, ce qui rend l'égalité
    et le hachage exacts.
    """

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, field: CycloField, num: Tuple[int, ...], den: int):
        if den < 0:
            num, den = tuple(-x for x in num), -den
        g = den
        for x in num:
            if x:
                g = gcd(g, x)
                if g == 1:
                    break
        if not any(num):
            den = 1
        elif g > 1:
            num = tuple(x // g for x in num)
            den //= g
        self.field = field
        self.num = num
        self.den = den
        self._hash = None

    # ------------------------------------------------------------------
    # Accès
    # ------------------------------------------------------------------

    @property
    def coefficients(self) -> Tuple[Fraction, ...]:
        return tuple(Fraction(x, self.den) for x in self.num)

    def sort_key(self) -> Tuple[Fraction, ...]:
        return self.coefficients

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise OrbifoldError(f"{self!r} is not rational")
        return Fraction(self.num[0], self.den)

    # ------------------------------------------------------------------
    # Arithmétique
    # ------------------------------------------------------------------

    def _coerce(self, other) -> "CycloNumber":
        if isinstance(other, CycloNumber):
            if other.field.conductor != self.field.conductor:
                raise FieldMismatchError(
                    f"conductors {self.field.conductor} and {other.field.conductor}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return NotImplemented

    def __add__(self, other) -> "CycloNumber":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            num = tuple(a + b for a, b in zip(self.num, other.num))
            return CycloNumber(self.field, num, self.den)
        num = tuple(a * other.den + b * self.den for a, b in zip(self.num, other.num))
        return CycloNumber(self.field, num, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "CycloNumber":
        return CycloNumber(self.field, tuple(-a for a in self.num), self.den)

    def __sub__(self, other) -> "CycloNumber":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "CycloNumber":
        return (-self) + other

    def __mul__(self, other) -> "CycloNumber":
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            num = tuple(a * other.numerator for a in self.num)
            return CycloNumber(self.field, num, self.den * other.denominator)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        num = self.field._mul_vectors(self.num, other.num)
        return CycloNumber(self.field, num, self.den * other.den)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "CycloNumber":
        if exponent < 0:
            return self.inv() ** (-exponent)
        result, base = self.field.one, self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def galois(self, t: int) -> "CycloNumber":
        """Automorphisme σ_t: ζ ↦ ζ^t (t premier au conducteur)."""
        return CycloNumber(self.field, self.field._galois_vector(self.num, t), self.den)

    def conj(self) -> "CycloNumber":
        """Conjugaison complexe ζ ↦ ζ⁻¹."""
        return self.galois(-1)

    def norm(self) -> Fraction:
        """Norme de Q(ζ_N) sur Q."""
        product = self.field.one
        for t in self.field.units_mod_conductor():
            product = product * self.galois(t)
        return product.rational_value()

    def inv(self) -> "CycloNumber":
        """
        Inverse exact: produit des conjugués de Galois non triviaux divisé
        par la norme.
        """
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        if self.is_rational():
            return self.field.from_rational(1 / self.rational_value())
        return _cached_inverse(self)

    def __truediv__(self, other) -> "CycloNumber":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other) -> "CycloNumber":
        return self.inv() * other

    # ------------------------------------------------------------------
    # Comparaison, hachage
    # ------------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, CycloNumber):
            return (
                self.field.conductor == other.field.conductor
                and self.den == other.den
                and self.num == other.num
            )
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field.conductor, self.num, self.den))
        return self._hash

    def __getstate__(self):
        return (self.field, self.num, self.den)

    def __setstate__(self, state):
        self.field, self.num, self.den = state
        self._hash = None

    def __repr__(self) -> str:
        terms = []
        for k, c in enumerate(self.coefficients):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*z^{k}")
        body = " + ".join(terms) or "0"
        return f"CycloNumber[{self.field.conductor}]({body})"

    # ------------------------------------------------------------------
    # Plongement numérique (diagnostic)
    # ------------------------------------------------------------------

    def to_float(self) -> complex:
        """Plongement ζ_N ↦ e^{2πi/N}."""
        n = self.field.conductor
        powers = np.exp(2j * np.pi * np.arange(self.field.degree) / n)
        coeffs = np.array([float(Fraction(x, self.den)) for x in self.num])
        return complex(np.dot(coeffs, powers))


@lru_cache(maxsize=65536)
def _cached_inverse(x: CycloNumber) -> CycloNumber:
    product = x.field.one
    for t in x.field.units_mod_conductor():
        if t != 1:
            product = product * x.galois(t)
    norm = (x * product).rational_value()
    return product * (1 / norm)


# ----------------------------------------------------------------------
# Constantes et racines de l'unité
# ----------------------------------------------------------------------

def root_of_unity(field: CycloField, a: int, b: int) -> CycloNumber:
    """
    e^{2πia/b} = ζ_N^{aN/b}.

    Raises:
        ConductorMismatchError: si b ne divise pas le conducteur
    """
    if b <= 0 or field.conductor % b:
        raise ConductorMismatchError(
            f"root of unity of order {b} not in field of conductor {field.conductor}"
        )
    return field.zeta(a * (field.conductor // b))


def imaginary_unit(field: CycloField) -> CycloNumber:
    return root_of_unity(field, 1, 4)


def sqrt2(field: CycloField) -> CycloNumber:
    """√2 = ζ₈ + ζ₈⁻¹."""
    return root_of_unity(field, 1, 8) + root_of_unity(field, -1, 8)


def sqrt_half(field: CycloField) -> CycloNumber:
    """√½ = √2 / 2."""
    return sqrt2(field) * Fraction(1, 2)


def golden_ratio(field: CycloField) -> CycloNumber:
    """τ = (1 + √5)/2 = −(ζ₅² + ζ₅³)."""
    return -(root_of_unity(field, 2, 5) + root_of_unity(field, 3, 5))


def golden_ratio_inverse(field: CycloField) -> CycloNumber:
    """τ⁻¹ = τ − 1 = ζ₅ + ζ₅⁴."""
    return root_of_unity(field, 1, 5) + root_of_unity(field, 4, 5)


def cos_2pi(field: CycloField, a: int, b: int) -> CycloNumber:
    """cos(2πa/b) exact."""
    z = root_of_unity(field, a, b)
    return (z + z.conj()) * Fraction(1, 2)


def real_sign(x: CycloNumber, tolerance: float = 1e-12) -> int:
    """
    Signe exact d'un nombre réel du corps.

    Le zéro est détecté exactement; sinon le plongement numérique tranche,
    avec erreur si la valeur est trop proche de 0 pour être fiable.
    """
    if x.is_zero():
        return 0
    if x.is_rational():
        return 1 if x.num[0] > 0 else -1
    if x != x.conj():
        raise OrbifoldError(f"real_sign of non-real number {x!r}")
    value = x.to_float().real
    if abs(value) < tolerance:
        raise OrbifoldError(f"sign of {x!r} undecidable at tolerance {tolerance}")
    return 1 if value > 0 else -1


def sum_numbers(field: CycloField, values: Iterable[CycloNumber]) -> CycloNumber:
    total = field.zero
    for v in values:
        total = total + v
    return total
