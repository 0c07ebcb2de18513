"""Exhaustive desk-scale search for the smallest positive difference

    r(n, k) = min |sqrt a_1 + ... + sqrt a_k - sqrt b_1 - ... - sqrt b_k| > 0

over multisets ``{a_i}``, ``{b_i}`` drawn from ``[1, n]``, plus empirical
checks of the separation bounds on every enumerated instance.

Multisets are ranked in ``combinations_with_replacement`` order and each
unordered pair ``(i < j)`` is visited once. The pair space is split into
contiguous row ranges; chunk results are folded back in rank order, so the
output does not depend on the number of workers.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Callable

from .cmpcore import Ordering, SqrtSum, canonicalize, certified_sign, compare, eval_interval
from .config import DEFAULT_CONFIG
from .errors import BudgetExceededError
from .intervals import Interval
from .numthy import DEFAULT_POLICY, build_generators
from .sepbound import corollary1_exponent, theorem1_bounds

BASE_PRECISION = 64
REPORT_PRECISION = 128


def multisets(n: int, k: int) -> list[tuple[int, ...]]:
    return list(combinations_with_replacement(range(1, n + 1), k))


def search_size(n: int, k: int) -> int:
    """Budget measure: the squared number of size-``k`` multisets from ``[1, n]``."""
    return math.comb(n + k - 1, k) ** 2


def check_budget(n: int, k: int, budget: int) -> None:
    if n < 2 or k < 1:
        raise ValueError(f"need n >= 2 and k >= 1, got n={n}, k={k}")
    size = search_size(n, k)
    if size > budget:
        raise BudgetExceededError(
            f"(n={n}, k={k}) has {size} multiset pairs, over the budget of {budget}"
        )


@dataclass(frozen=True)
class _Candidate:
    rank: int
    a: tuple[int, ...]
    b: tuple[int, ...]
    diff: SqrtSum  # sum(sqrt a) - sum(sqrt b), positive
    enclosure: Interval


def _encode(ms: tuple[int, ...]) -> str:
    return ",".join(map(str, ms))


class _PairSpace:
    """Canonical sums and base enclosures of every multiset, indexed by rank."""

    def __init__(self, n: int, k: int):
        self.sets = multisets(n, k)
        self.sums = [canonicalize((1, a) for a in ms) for ms in self.sets]
        self.encl = [eval_interval(s, BASE_PRECISION) for s in self.sums]

    def __len__(self):
        return len(self.sets)

    def rank(self, i: int, j: int) -> int:
        m = len(self.sets)
        return i * m - i * (i + 1) // 2 + (j - i - 1)

    def candidates(self, rows: range, policy: str):
        """Yield positive-oriented candidates for pairs ``i < j`` with ``i`` in ``rows``."""
        for i in rows:
            for j in range(i + 1, len(self.sets)):
                d = self.sums[j] - self.sums[i]
                if d.is_zero:
                    continue
                hint = self.encl[j] - self.encl[i]
                if certified_sign(d, policy, hint) > 0:
                    yield _Candidate(self.rank(i, j), self.sets[j], self.sets[i], d, hint)
                else:
                    yield _Candidate(self.rank(i, j), self.sets[i], self.sets[j], -d, -hint)


def _chunk_rows(size: int, jobs: int) -> list[range]:
    """Split rows ``0..size-1`` into contiguous ranges with balanced pair counts."""
    total = size * (size - 1) // 2
    parts = max(1, min(size, jobs * 4))
    target = total / parts
    chunks, start, acc = [], 0, 0
    for i in range(size):
        acc += size - 1 - i
        if acc >= target * (len(chunks) + 1) and len(chunks) < parts - 1:
            chunks.append(range(start, i + 1))
            start = i + 1
    chunks.append(range(start, size))
    return [c for c in chunks if len(c)]


def _run(worker: Callable, n: int, k: int, policy: str, jobs: int) -> list:
    size = math.comb(n + k - 1, k)
    chunks = _chunk_rows(size, jobs)
    args = [(n, k, c.start, c.stop, policy) for c in chunks]
    if jobs <= 1 or len(chunks) == 1:
        return [worker(*a) for a in args]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(worker, *zip(*args)))


def _positive_enclosure(d: SqrtSum, prec: int) -> Interval:
    """Enclosure of a certified-positive ``d`` whose lower end is above zero."""
    while True:
        iv = eval_interval(d, prec)
        if iv.lo > 0:
            return iv
        prec *= 2


def _smaller(new: _Candidate, best: _Candidate | None, policy: str) -> bool:
    """Strictly smaller difference; exact ties keep the earlier rank."""
    if best is None:
        return True
    if best.enclosure.below(new.enclosure):
        return False
    if new.enclosure.below(best.enclosure):
        return True
    return compare(new.diff, best.diff, policy).ordering is Ordering.LESS


def _rmin_chunk(n, k, start, stop, policy):
    space = _PairSpace(n, k)
    best = None
    for cand in space.candidates(range(start, stop), policy):
        if _smaller(cand, best, policy):
            best = cand
    return best


@dataclass(frozen=True)
class RminResult:
    n: int
    k: int
    witness_a: tuple[int, ...]
    witness_b: tuple[int, ...]
    difference: SqrtSum
    enclosure: Interval
    precision_bits: int

    @property
    def value_log2_bounds(self) -> tuple[float, float]:
        return self.enclosure.log2_bounds()

    @property
    def value_log2(self) -> float:
        lo, hi = self.value_log2_bounds
        return (lo + hi) / 2

    @property
    def value(self) -> Fraction:
        return self.enclosure.midpoint()


def rmin_exact(
    n: int,
    k: int,
    precision_bits: int = REPORT_PRECISION,
    *,
    policy: str = DEFAULT_POLICY,
    jobs: int = 1,
    budget: int = DEFAULT_CONFIG.enumeration_budget,
) -> RminResult:
    """Certified minimum positive difference and the first pair attaining it."""
    check_budget(n, k, budget)
    best = None
    for local in _run(_rmin_chunk, n, k, policy, jobs):
        if local is not None and _smaller(local, best, policy):
            best = local
    if best is None:
        raise ValueError(f"no positive difference for n={n}, k={k}")
    # width of sum(sqrt) - sum(sqrt) at p bits is at most 2k * 2^-p
    prec = max(precision_bits, BASE_PRECISION) + (2 * k).bit_length()
    return RminResult(
        n, k, best.a, best.b, best.diff, _positive_enclosure(best.diff, prec), precision_bits
    )


@dataclass(frozen=True)
class ValidationRow:
    a: tuple[int, ...]
    b: tuple[int, ...]
    observed_log2: float  # outward-rounded log2 of the lower end of the enclosure
    proof_bound_log2: float
    stated_bound_log2: float
    m_used: int

    @property
    def margin(self) -> float:
        return self.observed_log2 - self.proof_bound_log2

    @property
    def stated_margin(self) -> float:
        return self.observed_log2 - self.stated_bound_log2

    def to_row_dict(self) -> dict:
        return {
            "witness_a": _encode(self.a),
            "witness_b": _encode(self.b),
            "observed_log2": repr(self.observed_log2),
            "proof_bound_log2": repr(self.proof_bound_log2),
            "stated_bound_log2": repr(self.stated_bound_log2),
            "m_used": str(self.m_used),
            "margin": repr(self.margin),
        }


VALIDATION_COLUMNS = (
    "witness_a", "witness_b", "observed_log2", "proof_bound_log2",
    "stated_bound_log2", "m_used", "margin",
)


@dataclass(frozen=True)
class ValidationReport:
    n: int
    k: int
    policy: str
    rows: tuple[ValidationRow, ...]

    @property
    def violations(self) -> list[ValidationRow]:
        """Rows not strictly above the proof bound."""
        return [r for r in self.rows if not r.margin > 0]

    @property
    def stated_violations(self) -> list[ValidationRow]:
        return [r for r in self.rows if not r.stated_margin > 0]


def _validate_chunk(n, k, start, stop, policy):
    space = _PairSpace(n, k)
    rows = []
    for cand in space.candidates(range(start, stop), policy):
        iv = cand.enclosure if cand.enclosure.lo > 0 else _positive_enclosure(cand.diff, BASE_PRECISION)
        m = build_generators(cand.diff.radicands, policy).m
        report = theorem1_bounds(k, n, m, policy)
        rows.append(
            ValidationRow(
                cand.a, cand.b, iv.log2_bounds()[0],
                report.proof_bound_log2, report.stated_bound_log2, m,
            )
        )
    return rows


def validate_theorem1(
    n: int,
    k: int,
    policy: str = DEFAULT_POLICY,
    *,
    jobs: int = 1,
    budget: int = DEFAULT_CONFIG.enumeration_budget,
) -> ValidationReport:
    """Observed difference against both bounds for every unequal instance.

    Bounds use the scan's ``k`` and ``n`` and ``m`` generators for the
    radicands surviving in the canonical difference.
    """
    check_budget(n, k, budget)
    rows = [r for chunk in _run(_validate_chunk, n, k, policy, jobs) for r in chunk]
    return ValidationReport(n, k, policy, tuple(rows))


TABLE_COLUMNS = (
    "n", "k", "rmin_log2_lo", "rmin_log2_hi", "witness_a", "witness_b",
    "proof_bound_log2", "stated_bound_log2", "corollary_bound_log2",
)


@dataclass(frozen=True)
class TableRow:
    rmin: RminResult
    proof_bound_log2: float
    stated_bound_log2: float
    corollary_bound_log2: float  # upper bound on -log2 r(n, k)
    policy: str

    @property
    def neg_log2_r_bounds(self) -> tuple[float, float]:
        lo, hi = self.rmin.value_log2_bounds
        return -hi, -lo

    @property
    def within_corollary(self) -> bool:
        return self.neg_log2_r_bounds[1] <= self.corollary_bound_log2

    def to_row_dict(self) -> dict:
        lo, hi = self.rmin.value_log2_bounds
        return {
            "n": str(self.rmin.n),
            "k": str(self.rmin.k),
            "rmin_log2_lo": repr(lo),
            "rmin_log2_hi": repr(hi),
            "witness_a": _encode(self.rmin.witness_a),
            "witness_b": _encode(self.rmin.witness_b),
            "proof_bound_log2": repr(self.proof_bound_log2),
            "stated_bound_log2": repr(self.stated_bound_log2),
            "corollary_bound_log2": repr(self.corollary_bound_log2),
        }


def table_row(result: RminResult, policy: str = DEFAULT_POLICY,
              sieve_limit: int = DEFAULT_CONFIG.sieve_limit) -> TableRow:
    m = build_generators(result.difference.radicands, policy).m
    report = theorem1_bounds(result.k, result.n, m, policy)
    cor = corollary1_exponent(result.n, result.k, sieve_limit)
    return TableRow(result, report.proof_bound_log2, report.stated_bound_log2, cor.log2_bound, policy)


def corollary1_table(
    n_max: int,
    k: int,
    *,
    n_min: int = 2,
    policy: str = DEFAULT_POLICY,
    precision_bits: int = REPORT_PRECISION,
    jobs: int = 1,
    budget: int = DEFAULT_CONFIG.enumeration_budget,
    sieve_limit: int = DEFAULT_CONFIG.sieve_limit,
) -> list[TableRow]:
    check_budget(n_max, k, budget)
    return [
        table_row(
            rmin_exact(n, k, precision_bits, policy=policy, jobs=jobs, budget=budget),
            policy,
            sieve_limit,
        )
        for n in range(n_min, n_max + 1)
    ]
