"""Separation bounds for differences of two sums of square roots.

For ``k`` terms per side, every term ``c * sqrt(a)`` with ``c**2 * a <= n``,
and a generator set of size ``m``, each Galois conjugate of the difference
is at most ``2k sqrt(n)`` in absolute value while the norm is a nonzero
integer. Two exponents are carried:

* proof exponent ``2**m - 1``: ``|diff| >= (2k sqrt n) ** -(2**m - 1)``
* stated exponent ``2**(m+1)``: ``|diff| > (2k sqrt n) ** -(2**(m+1))``

The comparator caps its precision with the weaker stated bound; the explorer
validates the sharper proof bound. All bounds live in log2 space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .config import DEFAULT_CONFIG
from .numthy import DEFAULT_POLICY, POLICIES, prime_count

GUARD_BITS = 64


@dataclass(frozen=True)
class ConjMagnitude:
    """``2k sqrt(n)``, held exactly as ``sqrt(squared)``."""

    k: int
    n: int
    squared: int
    log2: float


def conj_magnitude(k: int, n: int) -> ConjMagnitude:
    if k < 1 or n < 1:
        raise ValueError(f"k and n must be positive, got k={k}, n={n}")
    squared = 4 * k * k * n
    return ConjMagnitude(k, n, squared, math.log2(squared) / 2)


@dataclass(frozen=True)
class BoundReport:
    k: int
    n: int
    m: int
    conj_magnitude_log2: float
    proof_bound_log2: float
    stated_bound_log2: float
    generator_policy: str = DEFAULT_POLICY
    saturated: bool = False

    @property
    def proof_exponent(self) -> int:
        return (1 << self.m) - 1

    @property
    def stated_exponent(self) -> int:
        return 1 << (self.m + 1)

    def to_json_dict(self) -> dict:
        return {
            "k": str(self.k),
            "n": str(self.n),
            "m": str(self.m),
            "conj_magnitude_log2": repr(self.conj_magnitude_log2),
            "proof_bound_log2": repr(self.proof_bound_log2),
            "stated_bound_log2": repr(self.stated_bound_log2),
            "generator_policy": self.generator_policy,
            "saturated": self.saturated,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "BoundReport":
        return cls(
            k=int(data["k"]),
            n=int(data["n"]),
            m=int(data["m"]),
            conj_magnitude_log2=float(data["conj_magnitude_log2"]),
            proof_bound_log2=float(data["proof_bound_log2"]),
            stated_bound_log2=float(data["stated_bound_log2"]),
            generator_policy=data["generator_policy"],
            saturated=bool(data["saturated"]),
        )


def _scaled(exponent: int, log2_value: float) -> tuple[float, bool]:
    try:
        value = -(float(exponent) * log2_value)
    except OverflowError:
        return -math.inf, True
    if math.isinf(value):
        return -math.inf, True
    return value + 0.0, False  # +0.0 turns -0.0 into 0.0


def theorem1_bounds(k: int, n: int, m: int, policy: str = DEFAULT_POLICY) -> BoundReport:
    """Both separation bounds for ``k`` terms per side, term size ``n``, ``m`` generators."""
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}")
    if policy not in POLICIES:
        raise ValueError(f"unknown generator policy {policy!r}")
    cm = conj_magnitude(k, n)
    proof, sat_p = _scaled((1 << m) - 1, cm.log2)
    stated, sat_s = _scaled(1 << (m + 1), cm.log2)
    return BoundReport(k, n, m, cm.log2, proof, stated, policy, sat_p or sat_s)


@dataclass(frozen=True)
class CorollaryBound:
    n: int
    k: int
    pi_n: int
    log2_bound: float  # upper bound on -log2 of the smallest positive difference

    @property
    def exponent(self) -> int:
        return (1 << self.pi_n) - 1


def corollary1_exponent(n: int, k: int = 1, sieve_limit: int = DEFAULT_CONFIG.sieve_limit) -> CorollaryBound:
    """Prime-generator bound: ``(2**pi(n) - 1) * log2(2k sqrt n)``.

    Every square-free integer up to ``n`` is a product of distinct primes
    ``<= n``, so ``m = pi(n)`` always suffices.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    pi_n = prime_count(n, max_limit=sieve_limit)
    bound, _ = _scaled((1 << pi_n) - 1, conj_magnitude(k, n).log2)
    return CorollaryBound(n, k, pi_n, -bound)


def precision_cap(report: BoundReport) -> int | None:
    """Bits at which an interval evaluation must separate unequal sums.

    ``None`` means unbounded (saturated exponent): the caller then relies on
    the sums being syntactically different for termination.
    """
    if report.saturated:
        return None
    return math.ceil(-report.stated_bound_log2) + GUARD_BITS
