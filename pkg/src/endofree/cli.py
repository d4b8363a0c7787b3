"""Command-line entry point.

Exit codes: 0 all checks hold, 1 some check fails, 2 some check is unknown
and none fails, 3 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .endaut import parse_aut, parse_bijection, parse_prime_perm
from .endo import identity_endo, inverse_endo, is_automorphism, is_pseudo_diagonal, parse_endo
from .matrix import basis_columns, matrix_of
from .report import SuiteReport
from .rings import RingError, parse_ring, parse_ring_aut
from .suites import (suite_group_words, suite_inverse_idempotent, suite_inverse_system,
                     suite_isom_deriv, suite_mirror_classification, suite_module_semi_inner,
                     suite_monogenic, suite_quasi_inner_battery, suite_semigroup_binary)
from .terms import TermSyntaxError, parse_element
from .varieties import DEFAULT_BUDGET, AlgebraError, BudgetExceeded, make_variety

USAGE_ERROR = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def default_budget() -> int:
    raw = os.environ.get("ENDOFREE_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"ENDOFREE_BUDGET must be a positive integer, got {raw!r}")
    if value < 1:
        raise UsageError("ENDOFREE_BUDGET must be positive")
    return value


def _common(p):
    p.add_argument("--variety", default="free-semigroup",
                   choices=["free-semigroup", "free-group", "free-inverse", "free-module"])
    p.add_argument("--rank", type=int, default=2)
    p.add_argument("--ring", default=None, help="Z, Q, GF(q) or GF(p,m); modules only")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--format", choices=["text", "json"], default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="endofree", description="Free algebras and automorphisms of End(F).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("canon", help="print the canonical form of a ground term")
    _common(p)
    p.add_argument("term")

    p = sub.add_parser("endo", help="classify an endomorphism given by its images")
    _common(p)
    p.add_argument("images")

    p = sub.add_parser("matrix", help="print the matrix of an automorphism of End(F)")
    _common(p)
    p.add_argument("--aut", required=True)

    p = sub.add_parser("verify", help="run a suite")
    _common(p)
    p.add_argument("suite", choices=[
        "semigroup-binary", "monogenic", "inverse-system", "inverse-idempotent", "group-words",
        "mirror-classification", "module-semi-inner", "quasi-inner-battery", "isom-deriv"])
    p.add_argument("--aut", action="append", default=None,
                   help="fixture for the quasi-inner battery (repeatable)")
    p.add_argument("--max-len", type=int, default=6)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--reading", choices=["A", "B"], default="A")
    p.add_argument("--max-syllables", type=int, default=3)
    p.add_argument("--max-exp", type=int, default=2)
    p.add_argument("--pi", default="2<->3")
    p.add_argument("--kind", choices=["semigroup", "cyclic-group"], default="semigroup")
    p.add_argument("--bound", type=int, default=None)
    p.add_argument("--twist", default="frobenius^1")
    p.add_argument("--sigma", default=None)
    p.add_argument("--bijection", default="inversion")
    return parser


def _variety(args):
    if args.rank < 1:
        raise UsageError("--rank must be positive")
    ring = None
    if args.variety == "free-module":
        ring = parse_ring(args.ring or "Q")
    elif args.ring is not None:
        raise UsageError("--ring applies to free-module only")
    return make_variety(args.variety, args.rank, ring)


def _emit_report(report: SuiteReport, fmt: str, out) -> int:
    out.write((report.dumps() if fmt == "json" else report.text()) + "\n")
    return report.exit_code


def cmd_canon(args, out) -> int:
    F = _variety(args)
    a = parse_element(args.term, F)
    if args.format == "json":
        out.write(json.dumps({"variety": F.spec(), "canonical": F.format(a)}) + "\n")
    else:
        out.write(F.format(a) + "\n")
    return 0


def cmd_endo(args, out) -> int:
    F = _variety(args)
    nu = parse_endo(args.images, F)
    aut = is_automorphism(nu)
    inv = inverse_endo(nu)
    pd = is_pseudo_diagonal(nu)
    doc = {"endo": nu.format(), "automorphism": aut.status.value,
           "inverse": inv.format() if inv is not None else None,
           "pseudo_diagonal": pd.witness if pd.ok else None}
    if args.format == "json":
        out.write(json.dumps(doc) + "\n")
    else:
        for k, v in doc.items():
            out.write(f"{k}: {v}\n")
    return 0


def cmd_matrix(args, out) -> int:
    F = _variety(args)
    phi = parse_aut(args.aut, F)
    M = matrix_of(phi)
    if args.format == "json":
        out.write(json.dumps({"aut": phi.format(), "matrix": M.format(),
                              "basis_columns": basis_columns(M)}) + "\n")
    else:
        out.write(M.table() + "\n" + M.format() + "\n")
    return 0


def _run_suite(args, budget) -> SuiteReport:
    name = args.suite
    samples = args.samples
    if name == "semigroup-binary":
        return suite_semigroup_binary(args.max_len)
    if name == "inverse-system":
        return suite_inverse_system(args.max_len, args.reading)
    if name == "group-words":
        return suite_group_words(args.max_syllables, args.max_exp)
    if name == "monogenic":
        return suite_monogenic(parse_prime_perm(args.pi), args.kind, args.bound or 50,
                               samples or 100, args.seed)
    if name == "mirror-classification":
        return suite_mirror_classification(args.rank, samples or 200, args.seed)
    if name == "module-semi-inner":
        ring = parse_ring(args.ring or "GF(4)")
        F = make_variety("free-module", args.rank, ring)
        sigma = identity_endo(F) if args.sigma in (None, "identity") else parse_endo(args.sigma, F)
        return suite_module_semi_inner(ring, parse_ring_aut(args.twist), sigma, samples or 100,
                                       args.seed)
    if name == "quasi-inner-battery":
        F = _variety(args)
        fixtures = [parse_aut(a, F) for a in args.aut] if args.aut else None
        return suite_quasi_inner_battery(F, fixtures, budget, args.seed)
    if name == "inverse-idempotent":
        F = make_variety("free-inverse", args.rank, None)
        return suite_inverse_idempotent(parse_bijection(args.bijection, F), args.bound or 3,
                                        args.seed)
    return suite_isom_deriv(samples or 100, args.seed)


def cmd_verify(args, out) -> int:
    budget = args.budget if args.budget is not None else default_budget()
    if budget < 1:
        raise UsageError("--budget must be positive")
    return _emit_report(_run_suite(args, budget), args.format, out)


COMMANDS = {"canon": cmd_canon, "endo": cmd_endo, "matrix": cmd_matrix, "verify": cmd_verify}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
    except TermSyntaxError as exc:
        err.write(f"parse error: {exc}\n")
    except (AlgebraError, RingError, BudgetExceeded) as exc:
        err.write(f"error: {exc}\n")
    return USAGE_ERROR
