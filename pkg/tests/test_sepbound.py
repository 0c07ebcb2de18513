import json
import math

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import trial_prime_count
from sqrtsep import schemas
from sqrtsep.errors import ResourceError
from sqrtsep.numthy import prime_count
from sqrtsep.sepbound import (
    GUARD_BITS,
    BoundReport,
    conj_magnitude,
    corollary1_exponent,
    precision_cap,
    theorem1_bounds,
)


def mp_log2_conj(k, n):
    with mpmath.workprec(200):
        return mpmath.log(2 * k * mpmath.sqrt(n), 2)


@pytest.mark.parametrize("k, n, log2", [
    (1, 1, 1.0),
    (1, 10, 2.6609640474436813),
    (2, 100, 5.321928094887363),
])
def test_conj_magnitude_examples(k, n, log2):
    cm = conj_magnitude(k, n)
    assert cm.squared == 4 * k * k * n
    assert cm.log2 == pytest.approx(log2, abs=1e-15)


@given(st.integers(1, 10**6), st.integers(1, 10**12))
def test_conj_magnitude_within_one_ulp(k, n):
    exact = mp_log2_conj(k, n)
    got = conj_magnitude(k, n).log2
    assert abs(mpmath.mpf(got) - exact) <= math.ulp(got)


def test_bound_report_examples():
    r = theorem1_bounds(1, 10, 2)
    assert r.proof_bound_log2 == pytest.approx(-7.98289, abs=1e-5)
    assert r.stated_bound_log2 == pytest.approx(-21.2877, abs=1e-4)
    r0 = theorem1_bounds(3, 7, 0)
    assert r0.proof_bound_log2 == 0.0
    assert r0.proof_exponent == 0 and r0.stated_exponent == 2


@given(st.integers(1, 50), st.integers(1, 10**6), st.integers(0, 40))
def test_report_invariants(k, n, m):
    r = theorem1_bounds(k, n, m)
    assert r.proof_bound_log2 == pytest.approx(-((1 << m) - 1) * r.conj_magnitude_log2, rel=1e-15)
    assert r.stated_bound_log2 == pytest.approx(-(1 << (m + 1)) * r.conj_magnitude_log2, rel=1e-15)
    assert r.stated_bound_log2 <= r.proof_bound_log2
    assert not r.saturated


@given(st.integers(1, 30), st.integers(1, 1000), st.integers(0, 12))
def test_monotone_in_each_argument(k, n, m):
    base = theorem1_bounds(k, n, m)
    for other in (theorem1_bounds(k + 1, n, m), theorem1_bounds(k, n + 1, m), theorem1_bounds(k, n, m + 1)):
        assert other.proof_bound_log2 <= base.proof_bound_log2
        assert other.stated_bound_log2 <= base.stated_bound_log2


def test_saturation_flag():
    r = theorem1_bounds(2, 10, 2000)
    assert r.saturated and r.stated_bound_log2 == -math.inf
    assert precision_cap(r) is None


def test_corollary_examples():
    c = corollary1_exponent(10)
    assert (c.pi_n, c.exponent) == (4, 15)
    assert corollary1_exponent(2).exponent == 1
    c30 = corollary1_exponent(30, k=3)
    assert c30.pi_n == 10
    assert c30.log2_bound == pytest.approx(1023 * float(mp_log2_conj(3, 30)), rel=1e-14)
    assert corollary1_exponent(2).log2_bound == pytest.approx(1.5)
    assert corollary1_exponent(10).log2_bound == pytest.approx(39.9144607, abs=1e-6)
    with pytest.raises(ResourceError):
        corollary1_exponent(10**6 + 1, sieve_limit=10**6)
    with pytest.raises(ValueError):
        corollary1_exponent(1)


def test_prime_count_matches_trial_division():
    for n in [2, 3, 10, 30, 100, 1000, 7919, 10000]:
        assert prime_count(n) == trial_prime_count(n)
    assert prime_count(10**6) == trial_prime_count(10**6) == 78498


def test_precision_cap_examples():
    assert precision_cap(theorem1_bounds(1, 10, 2)) == 22 + GUARD_BITS
    assert precision_cap(theorem1_bounds(1, 4, 1)) == 8 + GUARD_BITS
    # m = 0 still carries the stated exponent 2: ceil(2 * log2(2)) = 2
    assert precision_cap(theorem1_bounds(1, 1, 0)) == 2 + GUARD_BITS


def test_bound_report_json():
    jsonschema = pytest.importorskip("jsonschema")
    r = theorem1_bounds(2, 12, 3, "primes")
    data = r.to_json_dict()
    jsonschema.validate(data, schemas.BOUND_REPORT)
    assert list(data) == ["k", "n", "m", "conj_magnitude_log2", "proof_bound_log2",
                          "stated_bound_log2", "generator_policy", "saturated"]
    assert BoundReport.from_json_dict(json.loads(json.dumps(data))) == r
