from hypothesis import given, strategies as st

from legdoubles.poly import IntPoly, parse_coeffs, product

coeffs = st.lists(st.integers(-20, 20), max_size=7)


def test_normalization_and_degree():
    assert IntPoly([1, 2, 0, 0]).coeffs == (1, 2)
    assert IntPoly([]).degree == -1
    assert IntPoly([0, 0]).is_zero()


def test_format():
    assert str(IntPoly([2, -3, 1])) == "x^2 - 3x + 2"
    assert IntPoly([0, -1]).format("q") == "-q"
    assert str(IntPoly()) == "0"


def test_from_roots_and_division():
    p = IntPoly.from_roots([0, 1, 2])
    assert p == IntPoly([0, 2, -3, 1])
    q, r = p.divmod(IntPoly([-2, 1]))
    assert r.is_zero() and q == IntPoly([0, -1, 1])


def test_parse_and_product():
    assert parse_coeffs("0,2,-3,1") == IntPoly([0, 2, -3, 1])
    assert product([IntPoly([-1, 1])] * 3) == IntPoly([-1, 3, -3, 1])


@given(coeffs, coeffs, st.integers(-5, 5))
def test_ring_homomorphism(a, b, x):
    p, q = IntPoly(a), IntPoly(b)
    assert (p * q)(x) == p(x) * q(x)
    assert (p + q)(x) == p(x) + q(x)
    assert (p - q)(x) == p(x) - q(x)


@given(coeffs, st.integers(-4, 4), st.integers(-4, 4))
def test_taylor_shift(a, c, x):
    p = IntPoly(a)
    assert p.taylor_shift(c)(x) == p(x + c)
    assert p.taylor_shift(c).taylor_shift(-c) == p


@given(coeffs, st.lists(st.integers(-3, 3), min_size=1, max_size=3).map(lambda r: IntPoly.from_roots(r)))
def test_divmod_identity(a, d):
    p = IntPoly(a)
    q, r = p.divmod(d)
    assert q * d + r == p
    assert r.degree < d.degree
