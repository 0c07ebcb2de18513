"""Exact arithmetic in the multiquadratic extension Q(sqrt h_1, ..., sqrt h_m).

An element is a dense vector of ``2**m`` integers indexed by subset bitmask:
coefficient ``S`` multiplies the basis element ``prod(sqrt h_i for i in S)``.
Multiplication uses ``y_i**2 = h_i``, so two basis elements combine as

    B_S * B_T = (prod of h_i over S & T) * B_{S ^ T}.

Conjugation by a sign vector negates the square roots it selects, and the
norm is the product of all ``2**m`` conjugates, which collapses to an integer.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping

from .config import DEFAULT_CONFIG
from .errors import GeneratorMismatchError, InvariantViolation, ResourceError
from .intervals import Interval, check_precision, sqrt_enclosure
from .numthy import GeneratorSet, subset_decompose


def squared_basis(gen: GeneratorSet) -> tuple[int, ...]:
    """``B'_S = prod(h_i for i in S)`` for every bitmask ``S``."""
    out = [1]
    for h in gen.generators:
        out += [v * h for v in out]
    return tuple(out)


def check_dimension(gen: GeneratorSet, max_m: int = DEFAULT_CONFIG.max_m) -> None:
    if gen.m > max_m:
        raise ResourceError(
            f"field needs {gen.m} generators (dimension 2^{gen.m}); limit is {max_m}"
        )


@dataclass(frozen=True)
class MqElement:
    gen: GeneratorSet
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != 1 << self.gen.m:
            raise ValueError(
                f"expected {1 << self.gen.m} coefficients, got {len(self.coeffs)}"
            )

    @classmethod
    def from_mapping(cls, gen: GeneratorSet, coeffs: Mapping[int, int]) -> "MqElement":
        size = 1 << gen.m
        dense = [0] * size
        for mask, c in coeffs.items():
            if not 0 <= mask < size:
                raise ValueError(f"bitmask {mask} out of range for m={gen.m}")
            dense[mask] += c
        return cls(gen, tuple(dense))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_constant(self) -> bool:
        return not any(self.coeffs[1:])

    def sparse(self) -> list[tuple[int, int]]:
        return [(s, c) for s, c in enumerate(self.coeffs) if c]

    def __add__(self, other):
        return mq_add(self, other)

    def __sub__(self, other):
        return mq_add(self, mq_neg(other))

    def __neg__(self):
        return mq_neg(self)

    def __mul__(self, other):
        return mq_mul(self, other)

    def __str__(self):
        terms = self.sparse()
        if not terms:
            return "0"
        b = squared_basis(self.gen)
        parts = []
        for s, c in terms:
            parts.append(str(c) if s == 0 else f"{c}*sqrt({b[s]})")
        return " + ".join(parts).replace("+ -", "- ")


def mq_zero(gen: GeneratorSet) -> MqElement:
    return MqElement(gen, (0,) * (1 << gen.m))


def mq_basis(gen: GeneratorSet, subset: int) -> MqElement:
    return MqElement.from_mapping(gen, {subset: 1})


def mq_const(gen: GeneratorSet, value: int) -> MqElement:
    return MqElement.from_mapping(gen, {0: value})


def _same_field(x: MqElement, y: MqElement) -> None:
    if x.gen != y.gen:
        raise GeneratorMismatchError(
            f"generator sets differ: {x.gen.generators} vs {y.gen.generators}"
        )


def mq_add(x: MqElement, y: MqElement) -> MqElement:
    _same_field(x, y)
    return MqElement(x.gen, tuple(a + b for a, b in zip(x.coeffs, y.coeffs)))


def mq_neg(x: MqElement) -> MqElement:
    return MqElement(x.gen, tuple(-a for a in x.coeffs))


def mq_mul(x: MqElement, y: MqElement) -> MqElement:
    _same_field(x, y)
    b = squared_basis(x.gen)
    out = [0] * len(x.coeffs)
    ys = y.sparse()
    for s, a in x.sparse():
        for t, c in ys:
            out[s ^ t] += a * c * b[s & t]
    return MqElement(x.gen, tuple(out))


def mq_conjugate(x: MqElement, flips: int) -> MqElement:
    """Apply the automorphism negating ``sqrt h_i`` for every bit ``i`` of ``flips``."""
    if not 0 <= flips < len(x.coeffs):
        raise ValueError(f"sign vector {flips} out of range for m={x.gen.m}")
    return MqElement(
        x.gen,
        tuple(-c if (s & flips).bit_count() & 1 else c for s, c in enumerate(x.coeffs)),
    )


def conjugate_product(x: MqElement) -> MqElement:
    """Product of all conjugates, folded in ascending sign-vector order."""
    acc = x
    for flips in range(1, len(x.coeffs)):
        acc = mq_mul(acc, mq_conjugate(x, flips))
    return acc


def mq_norm(x: MqElement) -> int:
    """Exact norm: the constant coefficient of the full conjugate product.

    Every non-constant coefficient of that product must vanish; a nonzero one
    raises :class:`InvariantViolation`.
    """
    prod = conjugate_product(x)
    if not prod.is_constant():
        bad = [(s, c) for s, c in prod.sparse() if s]
        raise InvariantViolation(f"conjugate product has non-constant terms {bad[:4]}")
    return prod.coeffs[0]


def mq_eval(x: MqElement, precision_bits: int) -> Interval:
    """Rigorous enclosure of the real value of ``x``."""
    check_precision(precision_bits)
    b = squared_basis(x.gen)
    acc = Interval(0, 0, precision_bits)
    for s, c in x.sparse():
        acc = acc + sqrt_enclosure(b[s], precision_bits).scale(c)
    return acc


def to_json_dict(x: MqElement) -> dict:
    return {
        "generators": [str(h) for h in x.gen.generators],
        "coeffs": [[str(s), str(c)] for s, c in x.sparse()],
    }


def from_json_dict(data: Mapping) -> MqElement:
    gen = GeneratorSet(tuple(int(h) for h in data["generators"]))
    return MqElement.from_mapping(gen, {int(s): int(c) for s, c in data["coeffs"]})


def dumps(x: MqElement) -> str:
    return json.dumps(to_json_dict(x), sort_keys=True, separators=(",", ":"))


def loads(text: str) -> MqElement:
    return from_json_dict(json.loads(text))


def element_from_terms(gen: GeneratorSet, terms: Iterable[tuple[int, int]]) -> MqElement:
    """Build ``sum(c * sqrt(a))`` over ``gen`` from (coefficient, radicand) pairs."""
    coeffs: dict[int, int] = {}
    for c, a in terms:
        s = subset_decompose(a, gen)
        coeffs[s] = coeffs.get(s, 0) + c
    return MqElement.from_mapping(gen, coeffs)
