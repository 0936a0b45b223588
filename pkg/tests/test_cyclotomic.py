import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from legdoubles.cyclotomic import (CycElem, cyclotomic_poly, is_rational, niven_rational,
                                   two_cos, zeta_pow)
from legdoubles.errors import DomainError
from legdoubles.poly import IntPoly, product


def totient(m):
    return sum(1 for k in range(1, m + 1) if math.gcd(k, m) == 1)


def test_phi12():
    assert cyclotomic_poly(12) == IntPoly([1, 0, -1, 0, 1])
    assert cyclotomic_poly(1) == IntPoly([-1, 1])
    c = cyclotomic_poly(105).coeffs  # smallest conductor with a coefficient -2
    assert min(c) == -2 and c[7] == c[41] == -2


@pytest.mark.parametrize("m", range(1, 61))
def test_product_over_divisors(m):
    p = product(cyclotomic_poly(d) for d in range(1, m + 1) if m % d == 0)
    assert p == IntPoly([-1] + [0] * (m - 1) + [1])
    assert cyclotomic_poly(m).degree == totient(m)


def test_conductor_range():
    with pytest.raises(DomainError):
        cyclotomic_poly(0)
    with pytest.raises(DomainError):
        zeta_pow(6, 1) + zeta_pow(5, 1)


def test_basic_identities():
    z = zeta_pow(6, 1)
    assert z + z.inv() == 1
    assert z ** 6 == 1 and z ** 3 == -1
    i = zeta_pow(4, 1)
    assert i * i == -1
    assert two_cos(1, 4) * two_cos(1, 4) == 2
    assert is_rational(two_cos(1, 3)) == 1
    assert is_rational(two_cos(1, 5)) is None
    assert (two_cos(1, 5) ** 2 - two_cos(1, 5)) == 1  # golden ratio


@settings(max_examples=100, deadline=None)
@given(st.integers(3, 40), st.lists(st.integers(-5, 5), min_size=1, max_size=8))
def test_inverse(m, coeffs):
    a = CycElem(m, coeffs)
    if a.is_zero():
        return
    assert a * a.inv() == 1
    assert a ** -2 * a ** 2 == 1


@settings(max_examples=100, deadline=None)
@given(st.integers(3, 40), st.lists(st.integers(-5, 5), min_size=1, max_size=8))
def test_numeric_embedding(m, coeffs):
    a = CycElem(m, coeffs)
    z = cmath.exp(2j * cmath.pi / m)
    direct = sum(c * z ** i for i, c in enumerate(coeffs))
    assert abs(a.to_complex() - direct) < 1e-8
    assert abs(a.conj().to_complex() - direct.conjugate()) < 1e-8


@pytest.mark.parametrize("q", range(1, 31))
def test_niven_agreement(q):
    for p in range(0, 2 * q + 1):
        exact = is_rational(two_cos(p, q))
        assert exact == niven_rational(p, q)
        if exact is not None:
            assert abs(float(exact) - 2 * math.cos(math.pi * p / q)) < 1e-12


@settings(max_examples=100, deadline=None)
@given(st.integers(3, 40), st.lists(st.integers(-5, 5), min_size=1, max_size=8))
def test_rational_iff_galois_fixed(m, coeffs):
    a = CycElem(m, coeffs)
    fixed = all(a.galois(k) == a for k in range(1, m) if math.gcd(k, m) == 1)
    assert fixed == (a.rational_value() is not None)


def test_galois_domain():
    with pytest.raises(DomainError):
        zeta_pow(6, 1).galois(2)
    with pytest.raises(DomainError):
        CycElem(5).inv()


def test_format_and_json():
    assert zeta_pow(5, 1).format() == "z5"
    assert CycElem(7, [Fraction(1, 2), -1]).format("w") == "1/2 - w"
    assert CycElem(3).format() == "0"
    assert zeta_pow(8, 3).to_json() == {"m": 8, "coeffs": ["0", "0", "0", "1"]}
