"""Command-line front end.

Exit codes:
    compare     0 = Less, 1 = Equal, 2 = Greater
    validate    0 = no violations, 1 = at least one violation
    others      0 on success
    64 usage error, 65 expression parse error, 66 resource or budget limit,
    70 bound violation (unseparated unequal sums) or internal invariant failure
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from decimal import Decimal, localcontext

from . import explorer
from .cmpcore import Ordering, canonicalize, compare, parse_expr
from .config import HARD_MAX_M, OUTPUT_FORMATS, GlobalConfig
from .errors import BoundViolationError, InvariantViolation, ParseError, ResourceError
from .mqalg import check_dimension, element_from_terms, mq_norm
from .numthy import (
    POLICIES,
    build_generators,
    prime_count,
    squarefree_decompose,
    subset_decompose,
    subset_indices,
)
from .sepbound import precision_cap, theorem1_bounds

EXIT_LESS, EXIT_EQUAL, EXIT_GREATER = 0, 1, 2
EXIT_USAGE = 64
EXIT_PARSE = 65
EXIT_RESOURCE = 66
EXIT_BOUND_VIOLATION = 70

_EXIT_FOR = {Ordering.LESS: EXIT_LESS, Ordering.EQUAL: EXIT_EQUAL, Ordering.GREATER: EXIT_GREATER}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    def default(value):
        return argparse.SUPPRESS if suppress else value

    base = GlobalConfig()
    parser.add_argument("--format", choices=OUTPUT_FORMATS, default=default(base.output_format))
    parser.add_argument("--jobs", type=_positive, default=default(base.jobs),
                        help="worker processes for explorer commands")
    parser.add_argument("--budget", type=_positive, default=default(base.enumeration_budget),
                        help="maximum enumeration size; raising it is the override for large scans")
    parser.add_argument("--max-m", type=_positive, default=default(base.max_m),
                        help=f"maximum generator count (hard ceiling {HARD_MAX_M})")
    parser.add_argument("--sieve-limit", type=_positive, default=default(base.sieve_limit))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sqrtsep", description="Certified comparison of sums of square roots.")
    _global_flags(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def policy(p):
        p.add_argument("--policy", choices=POLICIES, default="coprime")

    p = sub.add_parser("compare", parents=[common], help="order two radical sums")
    p.add_argument("expr1")
    p.add_argument("expr2")
    policy(p)

    p = sub.add_parser("bound", parents=[common], help="separation bounds for (k, n)")
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--radicands", type=_int_list, default=None,
                   help="comma-separated radicands; m then comes from --policy")
    policy(p)

    p = sub.add_parser("norm", parents=[common], help="exact field norm of an expression")
    p.add_argument("expr")
    policy(p)

    p = sub.add_parser("rmin", parents=[common], help="exhaustive r(n, k)")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--precision", type=_positive, default=explorer.REPORT_PRECISION)
    policy(p)

    p = sub.add_parser("validate", parents=[common], help="check the bounds on every instance")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--k", type=_positive, required=True)
    policy(p)

    p = sub.add_parser("table", parents=[common], help="r(n, k) against the prime-count bound")
    p.add_argument("--nmax", type=_positive, required=True)
    p.add_argument("--k", type=_positive, required=True)
    policy(p)

    p = sub.add_parser("generators", parents=[common], help="generator set of integers")
    p.add_argument("values", type=int, nargs="+")
    policy(p)
    return parser


def _config(args) -> GlobalConfig:
    try:
        return GlobalConfig(
            sieve_limit=args.sieve_limit,
            max_m=args.max_m,
            enumeration_budget=args.budget,
            output_format=args.format,
            jobs=args.jobs,
        )
    except ValueError as exc:
        raise UsageError(str(exc))


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _csv(columns, rows) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def _decimal(value, digits=20) -> str:
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(value.numerator) / Decimal(value.denominator))


def _parse(text: str):
    return canonicalize(parse_expr(text))


def cmd_compare(args, cfg, out) -> int:
    cert = compare(_parse(args.expr1), _parse(args.expr2), args.policy)
    if cfg.output_format == "json":
        out.write(_json(cert.to_json_dict()))
    elif cfg.output_format == "csv":
        d = cert.to_json_dict()
        row = {
            "ordering": d["ordering"],
            "method": d["method"],
            "precisions_tried": ";".join(d["precisions_tried"]),
            "final_interval_log2_width": d["final_interval_log2_width"] or "",
        }
        out.write(_csv(row, [row]))
    else:
        out.write(f"{cert.ordering.value}\n")
    return _EXIT_FOR[cert.ordering]


def cmd_bound(args, cfg, out) -> int:
    if args.radicands is not None:
        if any(r < 1 for r in args.radicands):
            raise UsageError("radicands must be positive")
        rads = [squarefree_decompose(r).radicand for r in args.radicands]
        m = build_generators(rads, args.policy).m
        policy = args.policy
    else:
        m = prime_count(args.n, max_limit=cfg.sieve_limit)
        policy = "primes"
    report = theorem1_bounds(args.k, args.n, m, policy)
    cap = precision_cap(report)
    data = report.to_json_dict()
    data["precision_cap"] = "unbounded" if cap is None else str(cap)
    if cfg.output_format == "json":
        out.write(_json(data))
    elif cfg.output_format == "csv":
        out.write(_csv(data, [data]))
    else:
        for key, value in data.items():
            out.write(f"{key}: {value}\n")
    return 0


def cmd_norm(args, cfg, out) -> int:
    s = _parse(args.expr)
    gen = build_generators(s.radicands, args.policy)
    check_dimension(gen, cfg.max_m)
    x = element_from_terms(gen, [(t.coeff, t.radicand) for t in s.terms])
    norm = mq_norm(x)  # raises InvariantViolation on a nonzero non-constant coefficient
    data = {
        "expression": str(s),
        "norm": str(norm),
        "m": str(gen.m),
        "generators": [str(h) for h in gen.generators],
        "policy": args.policy,
        "nonconstant_coefficients_zero": True,
    }
    if cfg.output_format == "json":
        out.write(_json(data))
    elif cfg.output_format == "csv":
        row = dict(data, generators=",".join(data["generators"]))
        out.write(_csv(row, [row]))
    else:
        gens = ", ".join(data["generators"])
        out.write(f"norm: {norm}\nm: {gen.m}\ngenerators: {{{gens}}}\n")
    return 0


def cmd_generators(args, cfg, out) -> int:
    if any(v < 2 for v in args.values):
        raise UsageError("values must be >= 2")
    parts = [squarefree_decompose(v) for v in args.values]
    gen = build_generators([p.radicand for p in parts], args.policy)
    entries = []
    for part in parts:
        mask = subset_decompose(part.radicand, gen)
        entries.append({
            "value": str(part.original),
            "cofactor": str(part.cofactor),
            "radicand": str(part.radicand),
            "subset": [str(gen.generators[i]) for i in subset_indices(mask)],
        })
    data = {"policy": args.policy, "m": str(gen.m),
            "generators": [str(h) for h in gen.generators], "decompositions": entries}
    if cfg.output_format == "json":
        out.write(_json(data))
    elif cfg.output_format == "csv":
        rows = [dict(e, subset=",".join(e["subset"])) for e in entries]
        out.write(_csv(("value", "cofactor", "radicand", "subset"), rows))
    else:
        out.write(f"generators: {{{', '.join(data['generators'])}}}\n")
        for e in entries:
            lhs = e["value"]
            if e["cofactor"] != "1":
                lhs += f" = {e['cofactor']}^2 * {e['radicand']}"
            out.write(f"{lhs} -> {{{', '.join(e['subset'])}}}\n")
    return 0


def cmd_rmin(args, cfg, out) -> int:
    res = explorer.rmin_exact(args.n, args.k, args.precision, policy=args.policy,
                              jobs=cfg.jobs, budget=cfg.enumeration_budget)
    row = explorer.table_row(res, args.policy, cfg.sieve_limit).to_row_dict()
    if cfg.output_format == "json":
        out.write(_json(row))
    elif cfg.output_format == "csv":
        out.write(_csv(explorer.TABLE_COLUMNS, [row]))
    else:
        out.write(f"r({args.n},{args.k}) = {_decimal(res.value)}\n")
        out.write(f"witness {row['witness_a']}|{row['witness_b']}\n")
        out.write(f"log2 in [{row['rmin_log2_lo']}, {row['rmin_log2_hi']}]\n")
    return 0


def cmd_validate(args, cfg, out) -> int:
    rep = explorer.validate_theorem1(args.n, args.k, args.policy,
                                     jobs=cfg.jobs, budget=cfg.enumeration_budget)
    violations = rep.violations
    if cfg.output_format == "json":
        out.write(_json({
            "n": str(rep.n), "k": str(rep.k), "policy": rep.policy,
            "rows": [r.to_row_dict() for r in rep.rows],
            "violations": [r.to_row_dict() for r in violations],
            "stated_violations": [r.to_row_dict() for r in rep.stated_violations],
        }))
    elif cfg.output_format == "csv":
        out.write(_csv(explorer.VALIDATION_COLUMNS, [r.to_row_dict() for r in rep.rows]))
    else:
        out.write(f"{len(rep.rows)} instances checked\n")
        out.write(f"{len(violations)} violations\n")
        out.write(f"{len(rep.stated_violations)} stated-bound violations\n")
        for r in violations:
            out.write(f"  {explorer._encode(r.a)}|{explorer._encode(r.b)} "
                      f"observed_log2={r.observed_log2!r} proof_bound_log2={r.proof_bound_log2!r} "
                      f"m={r.m_used}\n")
    return 1 if violations else 0


def cmd_table(args, cfg, out) -> int:
    rows = explorer.corollary1_table(args.nmax, args.k, policy=args.policy, jobs=cfg.jobs,
                                     budget=cfg.enumeration_budget, sieve_limit=cfg.sieve_limit)
    dicts = [r.to_row_dict() for r in rows]
    if cfg.output_format == "json":
        out.write(_json(dicts))
    elif cfg.output_format == "csv":
        out.write(_csv(explorer.TABLE_COLUMNS, dicts))
    else:
        out.write(f"{'n':>4} {'-log2 r':>12} {'bound':>14}  witness\n")
        for r, d in zip(rows, dicts):
            hi = r.neg_log2_r_bounds[1]
            out.write(f"{r.rmin.n:>4} {hi:>12.6f} {r.corollary_bound_log2:>14.4f}  "
                      f"{d['witness_a']}|{d['witness_b']}\n")
    return 0


COMMANDS = {
    "compare": cmd_compare,
    "bound": cmd_bound,
    "norm": cmd_norm,
    "rmin": cmd_rmin,
    "validate": cmd_validate,
    "table": cmd_table,
    "generators": cmd_generators,
}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        return COMMANDS[args.command](args, cfg, out)
    except UsageError as exc:
        err.write(f"sqrtsep: usage error: {exc}\n")
        return EXIT_USAGE
    except ParseError as exc:
        err.write(f"sqrtsep: parse error: {exc}\n{exc.caret()}\n")
        return EXIT_PARSE
    except ResourceError as exc:
        err.write(f"sqrtsep: resource limit: {exc}\n")
        return EXIT_RESOURCE
    except BoundViolationError as exc:
        err.write(f"sqrtsep: bound violation: {exc}\n")
        return EXIT_BOUND_VIOLATION
    except InvariantViolation as exc:
        err.write(f"sqrtsep: internal invariant violated: {exc}\n")
        return EXIT_BOUND_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
