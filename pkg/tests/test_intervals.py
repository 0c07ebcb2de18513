from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import encloses
from sqrtsep.intervals import Interval, check_precision, sqrt_enclosure


@given(st.integers(0, 10**12), st.sampled_from([16, 30, 64, 128, 256]))
def test_sqrt_enclosure_contains_true_root(a, prec):
    iv = sqrt_enclosure(a, prec)
    with mpmath.workprec(prec + 200):
        root = mpmath.sqrt(a)
        assert encloses(iv, root)
    assert iv.width <= Fraction(1, 2**prec)


def test_perfect_squares_are_exact():
    for r in range(50):
        iv = sqrt_enclosure(r * r, 64)
        assert iv.lo == iv.hi == r << 64


@given(st.integers(1, 10**9), st.integers(16, 200))
def test_sqrt_enclosures_nest_under_doubling(a, prec):
    assert sqrt_enclosure(a, prec).contains_interval(sqrt_enclosure(a, 2 * prec))


def test_arithmetic_is_exact():
    x = Interval(1, 3, 2)  # [1/4, 3/4]
    y = Interval(-1, 2, 1)  # [-1/2, 1]
    assert (x + y).lower == Fraction(-1, 4) and (x + y).upper == Fraction(7, 4)
    assert (x * y).lower == Fraction(-3, 8) and (x * y).upper == Fraction(3, 4)
    assert x.scale(-2).lower == Fraction(-3, 2)
    assert not y.excludes_zero() and x.excludes_zero()
    assert x.sign() == 1 and (-x).sign() == -1 and y.sign() == 0


def test_log2_bounds_outward():
    iv = Interval(3, 5, 4)
    lo, hi = iv.log2_bounds()
    with mpmath.workprec(200):
        assert mpmath.mpf(lo) <= mpmath.log(mpmath.mpf(3) / 16, 2)
        assert mpmath.mpf(hi) >= mpmath.log(mpmath.mpf(5) / 16, 2)
    assert Interval(1, 1, 0).log2_bounds() == (0.0, 0.0)
    assert Interval(2, 2, 0).log2_width() == float("-inf")


def test_precision_floor():
    with pytest.raises(ValueError):
        check_precision(15)


@given(st.integers(1, 2**600), st.integers(0, 1000))
def test_log2_bounds_outward_at_high_precision(x, prec):
    lo, hi = Interval(x, x, prec).log2_bounds()
    with mpmath.workprec(700):
        exact = mpmath.log(x, 2) - prec
        assert mpmath.mpf(lo) <= exact <= mpmath.mpf(hi)
        assert hi - lo < 1e-12 * max(1.0, abs(float(exact)))
