import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from legdoubles.cyclotomic import two_cos, zeta_pow
from legdoubles.errors import DomainError
from legdoubles.grassmann_obstruction import (FixedPoint, Status, check_real_enumeration,
                                              divisibility_ok, karp_fixed_points,
                                              numeric_plucker_ratio, obstruct_twist_spun,
                                              plucker_ratio, real_fixed_points)


@pytest.mark.parametrize("n", range(2, 9))
def test_karp_counts(n):
    for k in range(1, n):
        pts = karp_fixed_points(k, n)
        assert len(pts) == math.comb(n, k)
        assert len(set(pts)) == len(pts)
        assert all(p.verify() for p in pts)


def test_real_point_counts():
    assert len(real_fixed_points(2, 5)) == 2
    assert len(real_fixed_points(3, 4)) == 1
    assert len(real_fixed_points(3, 4, exhaustive=True)) == 2
    for n in range(3, 13):
        assert all(p.is_conjugation_closed() for p in real_fixed_points(2, n))
        assert set(real_fixed_points(2, n)) == set(real_fixed_points(2, n, exhaustive=True))
    for n in range(4, 13, 2):
        assert set(real_fixed_points(3, n)) < set(real_fixed_points(3, n, exhaustive=True))
    for n in range(5, 13, 2):
        assert set(real_fixed_points(3, n)) == set(real_fixed_points(3, n, exhaustive=True))


def test_ratio_examples():
    fp = FixedPoint(2, 5, (1, 9))
    assert plucker_ratio(fp, (0, 2)) == two_cos(1, 5)
    assert plucker_ratio(fp, (0, 1)) == 1
    fp = FixedPoint(2, 6, (3, 9))
    assert plucker_ratio(fp, (0, 2)).rational_value() == 0
    with pytest.raises(DomainError):
        plucker_ratio(fp, (0, 0))
    with pytest.raises(DomainError):
        FixedPoint(2, 5, (1, 11))


@pytest.mark.parametrize("n", range(4, 14))
def test_designated_ratio_closed_forms(n):
    # Vandermonde minors: the ratio is the first elementary symmetric function of the roots
    for fp in real_fixed_points(2, n):
        assert plucker_ratio(fp, (0, 2)) == two_cos(fp.root_exponents[0], n)
    for fp in real_fixed_points(3, n):
        assert plucker_ratio(fp, (0, 1, 3)) == 1 + two_cos(fp.root_exponents[1], n)


def test_divisibility_examples():
    assert divisibility_ok(2, 5) and divisibility_ok(2, 4) and divisibility_ok(2, 12)
    assert not divisibility_ok(2, 6) and not divisibility_ok(2, 10) and not divisibility_ok(2, 9)
    assert divisibility_ok(3, 7) and divisibility_ok(3, 5)
    assert not divisibility_ok(3, 4) and not divisibility_ok(3, 6) and not divisibility_ok(3, 8)


def test_verdicts():
    for args in [(2, 5, 1), (2, 7, 3), (3, 7, 1), (3, 11, 2)]:
        v = obstruct_twist_spun(*args)
        assert v.status == Status.OBSTRUCTED
        assert v.certificates and all(c.rational is None for c in v.certificates)
        assert v.to_dict()["status"] == "Obstructed"
    v = obstruct_twist_spun(2, 6, 1)
    assert v.status == Status.PRECONDITION_FAILED and not v.certificates
    v = obstruct_twist_spun(2, 6, 1, force=True)
    assert v.rational_witness.rational == 0
    assert v.rational_witness.to_dict()["ratio"] == "Delta_13/Delta_12"
    assert obstruct_twist_spun(2, 5, 2).status == Status.OBSTRUCTED
    assert obstruct_twist_spun(2, 8, 2).status == Status.PRECONDITION_FAILED
    with pytest.raises(DomainError):
        obstruct_twist_spun(4, 9, 1)
    with pytest.raises(DomainError):
        obstruct_twist_spun(2, 5, 0)


def test_all_ratios_option():
    v = obstruct_twist_spun(2, 5, 1, all_ratios=True)
    assert v.status == Status.OBSTRUCTED
    v = obstruct_twist_spun(4, 9, 1, all_ratios=True)
    assert v.status in (Status.OBSTRUCTED, Status.INCONCLUSIVE)


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 10).flatmap(lambda n: st.tuples(
    st.sampled_from(real_fixed_points(2, n) + (real_fixed_points(3, n) if n >= 4 else [])),
    st.randoms())))
def test_ratios_real_at_real_points(data):
    fp, rnd = data
    cols = tuple(sorted(rnd.sample(range(fp.n), fp.k)))
    val = plucker_ratio(fp, cols)
    assert val == val.conj()


@pytest.mark.parametrize("n", range(3, 13))
def test_numeric_agreement(n):
    for k in (2, 3):
        if k >= n:
            continue
        for fp in karp_fixed_points(k, n)[:6]:
            for cols in list(itertools.combinations(range(n), k))[:8]:
                exact = plucker_ratio(fp, cols).to_complex()
                assert abs(exact - numeric_plucker_ratio(fp, cols)) < 1e-7


@pytest.mark.parametrize("k,n", [(2, 4), (2, 5), (2, 6), (3, 5), (3, 6), (3, 7)])
def test_real_enumeration(k, n):
    assert check_real_enumeration(k, n)
