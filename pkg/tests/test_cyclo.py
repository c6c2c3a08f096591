"""
Tests du corps cyclotomique exact.
"""

from fractions import Fraction

import pytest

from src.algebra.cyclo import (
    CycloField,
    cos_2pi,
    golden_ratio,
    golden_ratio_inverse,
    imaginary_unit,
    make_field,
    real_sign,
    root_of_unity,
    sqrt2,
    sqrt_half,
    sum_numbers,
)
from src.exceptions import ConductorMismatchError, FieldMismatchError


def _random_number(field, rng, low=-5, high=6):
    coeffs = [Fraction(int(a), int(b)) for a, b in zip(
        rng.integers(low, high, field.degree), rng.integers(1, 4, field.degree))]
    return field.from_coefficients(coeffs)


# ============================================================================
# Construction du corps
# ============================================================================

def test_make_field_rounds_conductor_to_multiple_of_4():
    assert make_field(3).conductor == 12
    assert make_field(6).conductor == 12
    assert make_field(8).conductor == 8


def test_make_field_is_memoized():
    assert make_field(24) is make_field(24)


def test_conductor_not_multiple_of_4_is_rejected():
    with pytest.raises(ConductorMismatchError):
        CycloField(6)


def test_degree_is_totient(field24):
    assert field24.degree == 8
    assert make_field(20).degree == 8


# ============================================================================
# Arithmétique
# ============================================================================

def test_primitive_root_has_exact_order(field24):
    z = field24.zeta(1)
    assert z ** 24 == 1
    assert all(z ** k != 1 for k in range(1, 24))


def test_imaginary_unit_squares_to_minus_one(field8):
    i = imaginary_unit(field8)
    assert i * i == -1
    assert i.conj() == -i


def test_root_of_unity_outside_field(field8):
    with pytest.raises(ConductorMismatchError):
        root_of_unity(field8, 1, 3)


def test_sqrt2_and_golden_ratio():
    f8 = make_field(8)
    assert sqrt2(f8) * sqrt2(f8) == 2
    assert sqrt_half(f8) * sqrt_half(f8) == Fraction(1, 2)
    f20 = make_field(20)
    tau = golden_ratio(f20)
    assert tau * tau == tau + 1
    assert tau * golden_ratio_inverse(f20) == 1


def test_cos_is_real(field24):
    c = cos_2pi(field24, 1, 12)
    assert c == c.conj()
    assert c * c == Fraction(3, 4)


def test_inverse_of_random_elements(field24, rng):
    for _ in range(30):
        x = _random_number(field24, rng)
        if x.is_zero():
            continue
        assert x * x.inv() == 1
        assert (x / x) == field24.one


def test_inverse_of_zero_raises(field8):
    with pytest.raises(ZeroDivisionError):
        field8.zero.inv()


def _random_triples(field, rng, count):
    for _ in range(count):
        yield tuple(_random_number(field, rng) for _ in range(3))


def test_ring_axioms_on_random_triples(field24, rng):
    for a, b, c in _random_triples(field24, rng, 1000):
        assert (a * b) * c == a * (b * c)
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        assert a + b == b + a


def _from_powers(field, coeffs, shift=0, sign=1):
    """Σ c_k ζ^(k+shift), exposants pris sur tout Z/N (forme non réduite)."""
    return sum_numbers(field, (
        field.from_rational(sign * c) * field.zeta(k + shift) for k, c in enumerate(coeffs) if c
    ))


def test_exact_equality_matches_numerical_equality(field24, rng):
    """x == y exactement si et seulement si |x - y| < 1e-9 dans C."""
    half = field24.conductor // 2
    for trial in range(1000):
        coeffs = [Fraction(int(a), int(b)) for a, b in zip(
            rng.integers(-4, 5, field24.conductor), rng.integers(1, 4, field24.conductor))]
        x = _from_powers(field24, coeffs)
        if trial % 2 == 0:
            # ζ^(k+N/2) = -ζ^k: même nombre, autre écriture
            y = _from_powers(field24, coeffs, shift=half, sign=-1)
        else:
            y = _random_number(field24, rng)
        close = abs(x.to_float() - y.to_float()) < 1e-9
        assert (x == y) is close
        if trial % 2 == 0:
            assert x == y
            assert hash(x) == hash(y)


def test_galois_is_multiplicative(field24, rng):
    for _ in range(10):
        a, b = _random_number(field24, rng), _random_number(field24, rng)
        for t in field24.units_mod_conductor():
            assert (a * b).galois(t) == a.galois(t) * b.galois(t)


def test_norm_is_rational(field8):
    x = field8.one + field8.zeta(1)
    assert isinstance(x.norm(), Fraction)
    assert x.norm() != 0


def test_canonical_form_makes_equality_exact(field8):
    a = field8.from_coefficients([Fraction(2, 4), 0, Fraction(1, 2), 0])
    b = field8.from_coefficients([Fraction(1, 2), 0, Fraction(2, 4), 0])
    assert a == b
    assert hash(a) == hash(b)


def test_field_mismatch(field8, field24):
    with pytest.raises(FieldMismatchError):
        field8.one + field24.one


def test_to_float_embedding(field24):
    z = root_of_unity(field24, 1, 6)
    assert abs(z.to_float() - complex(0.5, 3 ** 0.5 / 2)) < 1e-9


# ============================================================================
# Signe exact
# ============================================================================

def test_real_sign():
    f8 = make_field(8)
    assert real_sign(sqrt2(f8) - 1) == 1
    assert real_sign(1 - sqrt2(f8)) == -1
    assert real_sign(f8.zero) == 0
    f20 = make_field(20)
    assert real_sign(golden_ratio_inverse(f20) - 1) == -1
