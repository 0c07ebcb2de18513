"""Certified sign of differences of sums of integer square roots."""

from .cmpcore import (
    CompareCertificate,
    Method,
    Ordering,
    SqrtSum,
    SqrtTerm,
    canonicalize,
    compare,
    compare_exprs,
    eval_interval,
    parse_expr,
    parse_sum,
    sums_equal,
)
from .explorer import corollary1_table, rmin_exact, validate_theorem1
from .mqalg import MqElement, mq_mul, mq_norm
from .numthy import GeneratorSet, coprime_base, factorize, prime_generators, squarefree_decompose
from .sepbound import BoundReport, precision_cap, theorem1_bounds

__version__ = "0.1.0"
