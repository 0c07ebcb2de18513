"""Parsing, canonicalization and certified comparison of radical sums.

Grammar (whitespace insignificant)::

    expr := term (('+' | '-') term)*
    term := [uint '*'] 'sqrt' '(' uint ')' | uint
    uint := decimal digits

Equality is decided on canonical forms alone: square roots of distinct
square-free integers are linearly independent over Q, so two sums are equal
exactly when their canonical term lists coincide. Unequal sums are ordered by
interval evaluation at doubling precision, capped by the separation bound.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from .errors import BoundViolationError, ParseError
from .intervals import Interval, check_precision, sqrt_enclosure
from .numthy import DEFAULT_POLICY, build_generators, is_squarefree, squarefree_decompose
from .sepbound import BoundReport, precision_cap, theorem1_bounds

INT_LIMIT = 2**63 - 1
START_PRECISION = 64


class RawTerm(NamedTuple):
    coeff: int
    radicand: int


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message, pos=None):
        return ParseError(message, self.pos if pos is None else pos, self.text)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, token: str):
        self.skip()
        if not self.text.startswith(token, self.pos):
            raise self.error(f"expected {token!r}")
        self.pos += len(token)

    def uint(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] in "0123456789":
            self.pos += 1
        if start == self.pos:
            raise self.error("expected an unsigned integer")
        value = int(self.text[start : self.pos])
        if value > INT_LIMIT:
            raise self.error("integer exceeds 2^63-1", start)
        return value

    def sqrt_call(self) -> int:
        self.expect("sqrt")
        self.expect("(")
        radicand = self.uint()
        self.expect(")")
        return radicand

    def term(self, sign: int) -> RawTerm:
        if self.peek() == "s":
            return RawTerm(sign, self.sqrt_call())
        value = self.uint()
        if self.peek() == "*":
            self.expect("*")
            return RawTerm(sign * value, self.sqrt_call())
        return RawTerm(sign * value, 1)

    def parse(self) -> list[RawTerm]:
        terms = [self.term(1)]
        while True:
            ch = self.peek()
            if ch == "":
                return terms
            if ch not in "+-":
                raise self.error(f"unexpected {ch!r}")
            self.pos += 1
            terms.append(self.term(1 if ch == "+" else -1))


def parse_expr(text: str) -> list[RawTerm]:
    """Parse ``text`` into raw (signed coefficient, radicand) terms, in order."""
    return _Parser(text).parse()


@dataclass(frozen=True, order=True)
class SqrtTerm:
    radicand: int
    coeff: int

    def __post_init__(self):
        if self.coeff == 0:
            raise ValueError("zero coefficient in canonical term")
        if not is_squarefree(self.radicand):
            raise ValueError(f"radicand {self.radicand} is not square-free")

    def __str__(self):
        if self.radicand == 1:
            return str(self.coeff)
        if self.coeff == 1:
            return f"sqrt({self.radicand})"
        if self.coeff == -1:
            return f"-sqrt({self.radicand})"
        return f"{self.coeff}*sqrt({self.radicand})"


@dataclass(frozen=True)
class SqrtSum:
    """Canonical sum: square-free radicands, strictly ascending, no zero terms."""

    terms: tuple[SqrtTerm, ...] = ()

    def __post_init__(self):
        rads = [t.radicand for t in self.terms]
        if any(a >= b for a, b in zip(rads, rads[1:])):
            raise ValueError("radicands must be strictly increasing")

    @classmethod
    def from_mapping(cls, coeffs: dict[int, int]) -> "SqrtSum":
        """From ``{square-free radicand: coefficient}``; zero coefficients are dropped."""
        return cls(tuple(SqrtTerm(r, c) for r, c in sorted(coeffs.items()) if c))

    def as_mapping(self) -> dict[int, int]:
        return {t.radicand: t.coeff for t in self.terms}

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def k_effective(self) -> int:
        return len(self.terms)

    @property
    def n_effective(self) -> int:
        return max((t.coeff * t.coeff * t.radicand for t in self.terms), default=0)

    @property
    def side_k(self) -> int:
        """Terms per side when split by sign: ``max(#positive, #negative)``."""
        pos = sum(1 for t in self.terms if t.coeff > 0)
        return max(pos, len(self.terms) - pos)

    @property
    def radicands(self) -> tuple[int, ...]:
        return tuple(t.radicand for t in self.terms)

    def __neg__(self) -> "SqrtSum":
        return SqrtSum(tuple(SqrtTerm(t.radicand, -t.coeff) for t in self.terms))

    def __add__(self, other: "SqrtSum") -> "SqrtSum":
        acc = self.as_mapping()
        for t in other.terms:
            acc[t.radicand] = acc.get(t.radicand, 0) + t.coeff
        return SqrtSum.from_mapping(acc)

    def __sub__(self, other: "SqrtSum") -> "SqrtSum":
        return self + (-other)

    def __str__(self):
        if not self.terms:
            return "0"
        out = str(self.terms[0])
        for t in self.terms[1:]:
            s = str(t)
            out += f" - {s[1:]}" if s.startswith("-") else f" + {s}"
        return out


def canonicalize(raw: Iterable[tuple[int, int]]) -> SqrtSum:
    """Unique canonical form of ``sum(c * sqrt(a))`` over raw ``(c, a)`` pairs."""
    acc: dict[int, int] = {}
    for coeff, radicand in raw:
        if coeff == 0 or radicand == 0:
            continue
        part = squarefree_decompose(radicand)
        acc[part.radicand] = acc.get(part.radicand, 0) + coeff * part.cofactor
    return SqrtSum.from_mapping(acc)


def parse_sum(text: str) -> SqrtSum:
    return canonicalize(parse_expr(text))


def sums_equal(s1: SqrtSum, s2: SqrtSum) -> bool:
    return s1.terms == s2.terms


def eval_interval(s: SqrtSum | Sequence[tuple[int, int]], precision_bits: int) -> Interval:
    """Enclosure of the sum at ``precision_bits``. Raw ``(c, a)`` lists are accepted too."""
    check_precision(precision_bits)
    pairs = ((t.coeff, t.radicand) for t in s.terms) if isinstance(s, SqrtSum) else s
    acc = Interval(0, 0, precision_bits)
    for c, a in pairs:
        acc = acc + sqrt_enclosure(a, precision_bits).scale(c)
    return acc


class Ordering(str, enum.Enum):
    LESS = "Less"
    EQUAL = "Equal"
    GREATER = "Greater"


class Method(str, enum.Enum):
    SYNTACTIC = "syntactic-equality"
    INTERVAL = "interval-separation"


@dataclass(frozen=True)
class CompareCertificate:
    ordering: Ordering
    method: Method
    precisions_tried: tuple[int, ...] = ()
    final_interval_log2_width: float | None = None
    bound_report: BoundReport | None = None
    difference: SqrtSum = field(default_factory=SqrtSum, compare=False)

    def to_json_dict(self) -> dict:
        w = self.final_interval_log2_width
        return {
            "ordering": self.ordering.value,
            "method": self.method.value,
            "precisions_tried": [str(p) for p in self.precisions_tried],
            "final_interval_log2_width": None if w is None else repr(w),
            "bound": None if self.bound_report is None else self.bound_report.to_json_dict(),
        }


def difference_bound(d: SqrtSum, policy: str = DEFAULT_POLICY) -> BoundReport:
    """Separation bound for a nonzero canonical difference."""
    m = build_generators(d.radicands, policy).m
    return theorem1_bounds(d.side_k, d.n_effective, m, policy)


def compare(s1: SqrtSum, s2: SqrtSum, policy: str = DEFAULT_POLICY) -> CompareCertificate:
    """Order ``s1`` against ``s2`` with a certificate.

    Raises :class:`BoundViolationError` if the difference is still unresolved
    at the precision cap while the canonical forms differ.
    """
    if sums_equal(s1, s2):
        return CompareCertificate(Ordering.EQUAL, Method.SYNTACTIC)
    d = s1 - s2
    report = difference_bound(d, policy)
    cap = precision_cap(report)
    tried = []
    prec = START_PRECISION
    while True:
        if cap is not None:
            prec = min(prec, cap)
        iv = eval_interval(d, prec)
        tried.append(prec)
        sign = iv.sign()
        if sign:
            return CompareCertificate(
                Ordering.GREATER if sign > 0 else Ordering.LESS,
                Method.INTERVAL,
                tuple(tried),
                iv.log2_width(),
                report,
                d,
            )
        if cap is not None and prec >= cap:
            raise BoundViolationError(
                f"difference {d} not separated from zero at the {cap}-bit cap",
                difference=d,
                bound_report=report,
                precisions_tried=tuple(tried),
            )
        prec *= 2


def compare_exprs(text1: str, text2: str, policy: str = DEFAULT_POLICY) -> CompareCertificate:
    return compare(parse_sum(text1), parse_sum(text2), policy)


def certified_sign(d: SqrtSum, policy: str = DEFAULT_POLICY, hint: Interval | None = None) -> int:
    """Exact sign of ``d``; ``hint`` is a precomputed enclosure tried first."""
    if d.is_zero:
        return 0
    if hint is not None and hint.excludes_zero():
        return hint.sign()
    return {Ordering.LESS: -1, Ordering.GREATER: 1}[compare(d, SqrtSum(), policy).ordering]
