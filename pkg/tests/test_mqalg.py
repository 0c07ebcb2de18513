import math
from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import encloses
from sqrtsep.errors import GeneratorMismatchError, InvariantViolation, ResourceError
from sqrtsep.mqalg import (
    MqElement,
    check_dimension,
    conjugate_product,
    dumps,
    element_from_terms,
    loads,
    mq_add,
    mq_basis,
    mq_conjugate,
    mq_const,
    mq_eval,
    mq_mul,
    mq_norm,
    mq_zero,
    squared_basis,
)
from sqrtsep.numthy import GeneratorSet

G2 = GeneratorSet((2,))
G23 = GeneratorSet((2, 3))
GENSETS = [GeneratorSet(g) for g in [(2,), (3,), (2, 3), (2, 3, 5), (2, 3, 5, 7), (5, 6), (6, 10, 15)]]


def el(gen, mapping):
    return MqElement.from_mapping(gen, mapping)


def sympy_value(x):
    b = squared_basis(x.gen)
    return sum(c * sympy.sqrt(b[s]) for s, c in x.sparse())


def sympy_norm(x):
    """Expand the product of conjugates symbolically, with sqrt(h_i) as y_i."""
    ys = sympy.symbols(f"y0:{x.gen.m}")
    rels = {y**2: h for y, h in zip(ys, x.gen.generators)}
    total = 1
    for flips in range(1 << x.gen.m):
        term = 0
        for s, c in x.sparse():
            mono = c
            for i in range(x.gen.m):
                if s >> i & 1:
                    mono *= -ys[i] if flips >> i & 1 else ys[i]
            term += mono
        total = sympy.expand(total * term)
        # reduce y_i**2 -> h_i
        poly = sympy.Poly(total, *ys) if ys else None
        if poly is not None:
            reduced = 0
            for monom, coeff in poly.terms():
                t = coeff
                for y, h, e in zip(ys, x.gen.generators, monom):
                    t *= h ** (e // 2) * y ** (e % 2)
                reduced += t
            total = sympy.expand(reduced)
    return total


def test_constructors():
    assert mq_basis(G23, 0) == mq_const(G23, 1)
    assert mq_eval(mq_zero(G23), 64) == mq_eval(mq_zero(G23), 64)
    z = mq_eval(mq_zero(G23), 64)
    assert z.lo == z.hi == 0
    iv = mq_eval(mq_basis(G23, 0b11), 200)
    with mpmath.workprec(400):
        assert encloses(iv, mpmath.sqrt(6))
    assert float(iv.midpoint()) == pytest.approx(2.449489742783178)


def test_add_examples():
    x = el(G2, {0: 1, 1: 1})
    assert x + mq_zero(G2) == x
    assert (mq_basis(G2, 1) + mq_basis(G2, 1)).coeffs == (0, 2)
    assert el(G2, {0: 1, 1: 1}) + el(G2, {0: 3, 1: -1}) == mq_const(G2, 4)


def test_mul_examples():
    r2 = el(G23, {0b01: 1})
    r3 = el(G23, {0b10: 1})
    assert r2 * r2 == mq_const(G23, 2)
    assert r2 * r3 == el(G23, {0b11: 1})
    assert el(G2, {0: 1, 1: 1}) * el(G2, {0: 1, 1: -1}) == mq_const(G2, -1)


def test_mismatched_fields():
    with pytest.raises(GeneratorMismatchError):
        mq_add(mq_zero(G2), mq_zero(G23))
    with pytest.raises(GeneratorMismatchError):
        mq_mul(mq_zero(G2), mq_zero(G23))


def test_conjugate_examples():
    x = el(G2, {0: 1, 1: 1})
    assert mq_conjugate(x, 0) == x
    assert mq_conjugate(x, 1) == el(G2, {0: 1, 1: -1})
    assert mq_conjugate(el(G23, {0b11: 1}), 0b01) == el(G23, {0b11: -1})


def test_norm_examples():
    for gen in GENSETS[:5]:
        assert mq_norm(mq_const(gen, 3)) == 3 ** (1 << gen.m)
    assert mq_norm(el(G2, {0: 1, 1: 1})) == -1
    x = el(G23, {0b01: 1, 0b10: 1})
    assert sympy.expand(sympy_norm(x)) == 1
    assert mq_norm(x) == 1
    assert mq_norm(mq_zero(G23)) == 0


def test_norm_invariant_violation_is_raised(monkeypatch):
    import sqrtsep.mqalg as mq

    real = mq.conjugate_product
    monkeypatch.setattr(mq, "conjugate_product", lambda x: real(x) + mq_basis(x.gen, 1))
    with pytest.raises(InvariantViolation):
        mq.mq_norm(el(G2, {0: 1, 1: 1}))


def elements(max_m=4, lo=-9, hi=9):
    @st.composite
    def build(draw):
        gen = draw(st.sampled_from([g for g in GENSETS if g.m <= max_m]))
        coeffs = draw(st.lists(st.integers(lo, hi), min_size=1 << gen.m, max_size=1 << gen.m))
        return MqElement(gen, tuple(coeffs))

    return build()


@st.composite
def element_pairs(draw, max_m=3):
    x = draw(elements(max_m))
    coeffs = draw(st.lists(st.integers(-9, 9), min_size=len(x.coeffs), max_size=len(x.coeffs)))
    return x, MqElement(x.gen, tuple(coeffs))


@st.composite
def element_triples(draw, max_m=3):
    x, y = draw(element_pairs(max_m))
    coeffs = draw(st.lists(st.integers(-9, 9), min_size=len(x.coeffs), max_size=len(x.coeffs)))
    return x, y, MqElement(x.gen, tuple(coeffs))


@given(element_triples())
def test_ring_laws(xyz):
    x, y, z = xyz
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z


@settings(max_examples=60)
@given(element_pairs())
def test_conjugation_is_multiplicative(xy):
    x, y = xy
    for s in range(1 << x.gen.m):
        assert mq_conjugate(x * y, s) == mq_conjugate(x, s) * mq_conjugate(y, s)


@settings(max_examples=60)
@given(element_pairs())
def test_norm_multiplicative(xy):
    x, y = xy
    assert mq_norm(x * y) == mq_norm(x) * mq_norm(y)


@settings(max_examples=100)
@given(elements())
def test_conjugate_product_is_constant(x):
    assert conjugate_product(x).is_constant()


@settings(max_examples=40)
@given(elements(max_m=3))
def test_norm_matches_high_precision_conjugate_product(x):
    b = squared_basis(x.gen)
    with mpmath.workprec(600):
        roots = [mpmath.sqrt(v) for v in b]
        prod = mpmath.mpf(1)
        for flips in range(1 << x.gen.m):
            prod *= mpmath.fsum(
                (-c if bin(s & flips).count("1") % 2 else c) * roots[s] for s, c in x.sparse()
            )
        assert abs(prod - mq_norm(x)) < mpmath.mpf(2) ** -300


@settings(max_examples=15, deadline=None)
@given(elements(max_m=2, lo=-4, hi=4))
def test_norm_matches_symbolic_expansion(x):
    assert sympy_norm(x) == mq_norm(x)


@settings(max_examples=60)
@given(element_pairs(), st.sampled_from([32, 64, 128]))
def test_eval_consistency(xy, prec):
    x, y = xy
    assert mq_eval(x * y, prec).intersects(mq_eval(x, prec) * mq_eval(y, prec))
    conj = mq_eval(x, prec)
    for s in range(1, 1 << x.gen.m):
        conj = conj * mq_eval(mq_conjugate(x, s), prec)
    assert conj.contains(mq_norm(x))


@settings(max_examples=100)
@given(st.data())
def test_norm_nonzero_for_nonzero_elements(data):
    # distinct square-free radicands: only pairwise-coprime sets give a field
    gen = data.draw(st.sampled_from([g for g in GENSETS if g.pairwise_coprime]))
    coeffs = data.draw(st.lists(st.integers(-9, 9), min_size=1 << gen.m, max_size=1 << gen.m))
    x = MqElement(gen, tuple(coeffs))
    assert (mq_norm(x) == 0) == x.is_zero()


def test_eval_examples():
    iv = mq_eval(el(G2, {0: 1, 1: 1}), 64)
    with mpmath.workprec(300):
        assert encloses(iv, 1 + mpmath.sqrt(2))
    assert iv.width < Fraction(1, 2**50)
    x = el(G23, {0b01: 1, 0b10: 1, 0b11: -1})
    encl = [mq_eval(x, p) for p in (64, 128, 256)]
    with mpmath.workprec(600):
        v = mpmath.sqrt(2) + mpmath.sqrt(3) - mpmath.sqrt(6)
        assert all(encloses(e, v) for e in encl)
    assert encl[0].contains_interval(encl[1]) and encl[1].contains_interval(encl[2])
    with pytest.raises(ValueError):
        mq_eval(x, 8)


def test_eval_width_shrinks_geometrically():
    x = el(GeneratorSet((2, 3, 5)), {1: 3, 2: -7, 5: 2, 7: 1})
    widths = [mq_eval(x, p).width for p in (32, 64, 128)]
    assert widths[1] <= widths[0] / 2**31 and widths[2] <= widths[1] / 2**63


@given(elements(lo=-10**30, hi=10**30))
def test_json_round_trip(x):
    text = dumps(x)
    assert loads(text) == x
    assert dumps(loads(text)) == text


def test_element_from_terms_and_dimension_check():
    gen = GeneratorSet((2, 3, 5))
    x = element_from_terms(gen, [(2, 15), (-1, 1), (1, 15)])
    assert x.sparse() == [(0, -1), (0b110, 3)]
    check_dimension(gen, 3)
    with pytest.raises(ResourceError):
        check_dimension(gen, 2)


def test_shared_factor_generators_still_satisfy_norm_laws():
    gen = GeneratorSet((6, 10, 15))
    # sqrt6*sqrt10*sqrt15 = 30 rationally: the algebra is not a field, but
    # conjugate products are still constant and multiplicative
    x = el(gen, {0b001: 1, 0b010: 2, 0b100: -1})
    y = el(gen, {0: 3, 0b111: 1})
    assert conjugate_product(x).is_constant()
    assert mq_norm(x * y) == mq_norm(x) * mq_norm(y)
    assert mq_norm(x) != 0
    assert math.isclose(float(mq_eval(el(gen, {0b111: 1}), 64).midpoint()), 30.0)
