"""Integer number theory: primes, factorization, square-free parts and
multiplicative generator sets.

Everything here is a pure function of its integer arguments.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .errors import NotGeneratedError, NotSquarefreeError, ResourceError

POLICIES = ("self", "primes", "coprime")
DEFAULT_POLICY = "coprime"

# Trial division covers every cofactor below TRIAL_LIMIT**2.
TRIAL_LIMIT = 1000
_SMALL_PRIMES: list[int] = []
# Primality below TABLE_LIMIT is a table lookup.
TABLE_LIMIT = 1 << 20
_PRIME_TABLE = bytearray()

# Deterministic Miller-Rabin witnesses, valid for n < 3.3 * 10**24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def sieve_primes(limit: int, max_limit: int | None = None) -> list[int]:
    """Return all primes ``p <= limit`` in ascending order.

    ``max_limit`` guards memory; exceeding it raises :class:`ResourceError`.
    """
    if limit < 2:
        return []
    if max_limit is not None and limit > max_limit:
        raise ResourceError(f"sieve limit {limit} exceeds configured maximum {max_limit}")
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytes(len(range(p * p, limit + 1, p)))
    return [i for i, f in enumerate(flags) if f]


def prime_count(limit: int, max_limit: int | None = None) -> int:
    return len(sieve_primes(limit, max_limit))


def _small_primes() -> list[int]:
    if not _SMALL_PRIMES:
        _SMALL_PRIMES.extend(sieve_primes(TRIAL_LIMIT))
    return _SMALL_PRIMES


def _prime_table() -> bytearray:
    if not _PRIME_TABLE:
        table = bytearray(TABLE_LIMIT)
        for p in sieve_primes(TABLE_LIMIT - 1):
            table[p] = 1
        _PRIME_TABLE.extend(table)
    return _PRIME_TABLE


def is_prime(n: int) -> bool:
    if n < TABLE_LIMIT:
        return n >= 2 and bool(_prime_table()[n])
    for p in _small_primes()[:13]:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int, rng: random.Random) -> int:
    """Return a nontrivial factor of the odd composite ``n``."""
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


@dataclass(frozen=True)
class Factorization:
    value: int
    factors: tuple[tuple[int, int], ...]  # (prime, exponent), ascending primes

    def __post_init__(self):
        product = 1
        for p, e in self.factors:
            if e < 1 or not is_prime(p):
                raise ValueError(f"invalid factor {p}^{e}")
            product *= p**e
        if product != self.value:
            raise ValueError(f"factors multiply to {product}, not {self.value}")

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    def __str__(self):
        if not self.factors:
            return "1"
        return " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)


@lru_cache(maxsize=65536)
def factorize(n: int) -> Factorization:
    """Trial division by small primes, then Pollard-Brent on the cofactor."""
    if n < 1:
        raise ValueError(f"factorize expects a positive integer, got {n}")
    counts: dict[int, int] = {}
    rest = n
    for p in _small_primes():
        if p * p > rest:
            break
        while rest % p == 0:
            counts[p] = counts.get(p, 0) + 1
            rest //= p
    stack = [rest] if rest > 1 else []
    rng = None
    while stack:
        q = stack.pop()
        if q < TRIAL_LIMIT * TRIAL_LIMIT or is_prime(q):
            # every composite below TRIAL_LIMIT**2 was already split above
            counts[q] = counts.get(q, 0) + 1
            continue
        r = math.isqrt(q)
        if r * r == q:
            stack += [r, r]
            continue
        if rng is None:
            rng = random.Random(n)  # seeded: identical output on every run
        d = _pollard_brent(q, rng)
        stack += [d, q // d]
    return Factorization(n, tuple(sorted(counts.items())))


@dataclass(frozen=True)
class SquarefreePart:
    original: int
    cofactor: int
    radicand: int


def squarefree_decompose(n: int) -> SquarefreePart:
    """Write ``n = cofactor**2 * radicand`` with a square-free radicand."""
    cofactor = radicand = 1
    for p, e in factorize(n).factors:
        cofactor *= p ** (e // 2)
        if e % 2:
            radicand *= p
    return SquarefreePart(n, cofactor, radicand)


@lru_cache(maxsize=65536)
def is_squarefree(n: int) -> bool:
    if n < 1:
        return False
    return all(e == 1 for _, e in factorize(n).factors)


@dataclass(frozen=True)
class GeneratorSet:
    """Distinct square-free generators ``h_1 < ... < h_m``, each >= 2.

    The ``coprime`` and ``primes`` policies always produce pairwise-coprime
    sets. The ``self`` policy uses the radicands themselves, which may share
    factors; :func:`subset_decompose` handles both cases.
    """

    generators: tuple[int, ...] = ()

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        if list(gens) != sorted(set(gens)):
            raise ValueError("generators must be distinct and ascending")
        for h in gens:
            if h < 2:
                raise ValueError(f"generator {h} < 2")
            if not is_squarefree(h):
                raise NotSquarefreeError(h)

    @property
    def m(self) -> int:
        return len(self.generators)

    @property
    def pairwise_coprime(self) -> bool:
        return all(math.gcd(a, b) == 1 for a, b in combinations(self.generators, 2))

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)


def _check_inputs(values: Iterable[int]) -> list[int]:
    vals = sorted(set(values))
    for v in vals:
        if v < 2:
            raise ValueError(f"generator inputs must be >= 2, got {v}")
        if not is_squarefree(v):
            raise NotSquarefreeError(v)
    return vals


def coprime_base(values: Iterable[int]) -> GeneratorSet:
    """Pairwise-coprime refinement of square-free ``values`` by gcd splitting.

    Inputs that are already coprime to everything else come back untouched.
    """
    work = set(_check_inputs(values))
    while True:
        items = sorted(work)
        for a, b in combinations(items, 2):
            g = math.gcd(a, b)
            if g > 1:
                work -= {a, b}
                work |= {x for x in (g, a // g, b // g) if x > 1}
                break
        else:
            return GeneratorSet(tuple(items))


def prime_generators(values: Iterable[int]) -> GeneratorSet:
    primes: set[int] = set()
    for v in _check_inputs(values):
        primes.update(p for p, _ in factorize(v).factors)
    return GeneratorSet(tuple(sorted(primes)))


def build_generators(radicands: Iterable[int], policy: str = DEFAULT_POLICY) -> GeneratorSet:
    """Generator set for square-free ``radicands`` under ``policy``.

    Radicands equal to 1 need no generator and are dropped.
    """
    vals = sorted({r for r in radicands if r != 1})
    if policy == "self":
        _check_inputs(vals)
        return GeneratorSet(tuple(vals))
    if policy == "primes":
        return prime_generators(vals)
    if policy == "coprime":
        return coprime_base(vals)
    raise ValueError(f"unknown generator policy {policy!r}; expected one of {POLICIES}")


def subset_decompose(a: int, gen: GeneratorSet | Sequence[int]) -> int:
    """Bitmask ``S`` with ``prod(h_i for i in S) == a``.

    Bit ``i`` selects ``gen[i]``. When several subsets qualify (possible only
    for non-coprime sets) the smallest bitmask wins.
    """
    gens = tuple(gen)
    if a < 1:
        raise ValueError(f"cannot decompose {a}")
    if a == 1:
        return 0
    candidates = [i for i, h in enumerate(gens) if a % h == 0]
    if all(math.gcd(gens[i], gens[j]) == 1 for i, j in combinations(candidates, 2)):
        mask, rest = 0, a
        for i in candidates:
            mask |= 1 << i
            rest //= gens[i]
        if rest == 1:
            return mask
        raise NotGeneratedError(a, gens)
    # Shared factors: scan subsets of the candidates, ascending by bitmask.
    best = None
    for r in range(1, len(candidates) + 1):
        for combo in combinations(candidates, r):
            if math.prod(gens[i] for i in combo) == a:
                mask = sum(1 << i for i in combo)
                if best is None or mask < best:
                    best = mask
    if best is None:
        raise NotGeneratedError(a, gens)
    return best


def subset_indices(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]
