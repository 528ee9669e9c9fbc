"""Command-line front end.

Subcommands: ``prove`` and ``prove-up`` run the identity provers on a file;
``expand``, ``factor``, ``cusps``, ``orders``, ``check`` and ``formcheck``
expose the underlying machinery on expression strings.

Exit codes: 0 proved / success, 1 refuted, 2 not applicable, 3 usage or
parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional

from . import __version__
from .cusps import cusp_set, gamma0_cusp_orders
from .errors import (
    EtaProverError,
    LoweringError,
    NotAFormError,
    NotAnEtaProductError,
    ParseError,
    PreconditionError,
)
from .etaproducts import EtaCombo, EtaProduct, eta_factorize
from .modularity import modular_function_check, modular_form_check
from .parser import LinearIdentity, UpIdentity, parse_expression, parse_program
from .prover import (
    ProofReport,
    Verdict,
    format_order_table,
    normalize_identity,
    prove_identity,
)
from .up import prove_up_identity

_EXIT_FOR_VERDICT = {
    Verdict.PROVED: 0,
    Verdict.BOUND_ONLY: 0,
    Verdict.REFUTED: 1,
    Verdict.NOT_APPLICABLE: 2,
}

_CONDITION_TEXT = {
    1: "the eta exponents sum to 0",
    2: "sum of t*r is divisible by 24",
    3: "the product of t^|r| is a perfect square",
    4: "every multiplier divides the level",
    5: "sum of (level/t)*r is divisible by 24",
}


class _ArgumentParser(argparse.ArgumentParser):
    """argparse that exits 3 on usage errors, matching the CLI contract."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(3)


def _single_product(combo: EtaCombo, what: str) -> EtaProduct:
    if combo.constant == 0 and len(combo.terms) == 1 and combo.terms[0][0] == 1:
        return combo.terms[0][1]
    raise LoweringError(f"{what} needs a plain eta-product expression", 1, 1)


def _certificate(report: ProofReport, command: str, source: str,
                 margin: int) -> str:
    cert = {
        "tool": f"etaprover {__version__}",
        "command": command,
        "input": source,
        "level": report.level,
        "margin": margin,
        "verdict": report.verdict.value,
        "B": str(report.bound),
        "required_depth": report.required_depth,
        "checked_depth": report.checked_depth,
        "constants_warning": report.constants_warning,
        "cusps": [str(c) for c in report.cusps],
        "terms": list(report.term_labels),
        "ord_rows": [[str(v) for v in row] for row in report.term_orders],
        "column_minima": [str(v) for v in report.column_minima],
        "up_p": report.up_p,
        "up_bounds": (None if report.up_bounds is None
                      else [str(v) for v in report.up_bounds]),
        "failure": (None if report.failure is None
                    else [str(report.failure[0]), str(report.failure[1])]),
        "reason": report.reason,
    }
    return json.dumps(cert, indent=2, sort_keys=True) + "\n"


def _print_report(report: ProofReport, terms, quiet: bool) -> None:
    verdictline = {
        Verdict.PROVED: "verdict: PROVED",
        Verdict.REFUTED: "verdict: REFUTED",
        Verdict.NOT_APPLICABLE: "verdict: NOT-APPLICABLE",
        Verdict.BOUND_ONLY: "verdict: NOT-VERIFIED (bound only)",
    }[report.verdict]
    if report.verdict is Verdict.NOT_APPLICABLE:
        if not quiet:
            print(f"level: {report.level}")
            print(report.reason)
        print(verdictline)
        return
    if not quiet:
        print(f"level: {report.level}")
        for i, (coeff, label) in enumerate(terms, start=1):
            print(f"f_{i} = {label}   (coefficient {coeff})")
        if report.constants_warning:
            print("note: the identity carries a constant term")
        print(format_order_table(report))
        print(f"B = {report.bound}")
        print(f"verify through q^{report.required_depth}")
        if report.verdict is Verdict.PROVED:
            print(f"all coefficients through q^{report.checked_depth} vanish")
        elif report.verdict is Verdict.REFUTED:
            e, c = report.failure
            print(f"nonzero coefficient {c} at q^{e}")
    print(verdictline)


def _report_terms(report: ProofReport, combo: EtaCombo):
    labels = list(report.term_labels)
    coeffs = [str(a) for a, _ in combo.terms]
    if len(coeffs) != len(labels):
        coeffs = ["?"] * len(labels)
    return list(zip(coeffs, labels))


def _cmd_prove(args) -> int:
    text = _read_file(args.file)
    ident = parse_program(text)
    if not isinstance(ident, LinearIdentity):
        print("error: this file holds a U_p identity; use prove-up",
              file=sys.stderr)
        return 3
    report = prove_identity(ident.combo, args.level, margin=args.margin,
                            verify=args.yes)
    try:
        normalized = normalize_identity(ident.combo)
    except EtaProverError:
        normalized = ident.combo
    _print_report(report, _report_terms(report, normalized), args.quiet)
    if args.json:
        _write_cert(args.json, _certificate(report, "prove", text, args.margin))
    return _EXIT_FOR_VERDICT[report.verdict]


def _cmd_prove_up(args) -> int:
    text = _read_file(args.file)
    ident = parse_program(text)
    if not isinstance(ident, UpIdentity):
        print("error: this file holds a linear identity; use prove",
              file=sys.stderr)
        return 3
    report = prove_up_identity(ident.product, ident.p, ident.rhs, args.level,
                               margin=args.margin, verify=args.yes)
    _print_report(report, _report_terms(report, ident.rhs), args.quiet)
    if args.json:
        _write_cert(args.json,
                    _certificate(report, "prove-up", text, args.margin))
    return _EXIT_FOR_VERDICT[report.verdict]


def _cmd_expand(args) -> int:
    combo = parse_expression(args.expr)
    depth = Fraction(args.depth)
    if args.no_prefactor:
        product = _single_product(combo, "--no-prefactor")
        print(product.expand_no_prefactor(depth))
    else:
        print(combo.expand(depth))
    return 0


def _cmd_factor(args) -> int:
    combo = parse_expression(args.expr)
    series = combo.expand(Fraction(args.depth))
    try:
        ep = eta_factorize(series, Fraction(args.depth))
    except NotAnEtaProductError as exc:
        print(f"not an eta-product: {exc}", file=sys.stderr)
        return 2
    print(ep)
    if not args.quiet:
        print(ep.eta_string())
    return 0


def _cmd_cusps(args) -> int:
    print(" ".join(str(c) for c in cusp_set(args.level)))
    return 0


def _cmd_orders(args) -> int:
    combo = parse_expression(args.expr)
    level = args.level
    if combo.constant == 0 and len(combo.terms) == 1 and combo.terms[0][0] == 1:
        product = combo.terms[0][1]
        cusps = [s for s in cusp_set(level) if s.c != level]
        rows = gamma0_cusp_orders(product, cusps, level)
        report = ProofReport(
            level=level, verdict=Verdict.BOUND_ONLY,
            bound=sum((min(v, 0) for _, v in rows), Fraction(0)),
            required_depth=0, checked_depth=-1, cusps=tuple(cusps),
            term_labels=(str(product),),
            term_orders=(tuple(v for _, v in rows),),
            column_minima=tuple(min(v, 0) for _, v in rows))
        print(format_order_table(report))
        return 0
    report = prove_identity(combo, level, verify=False)
    if report.verdict is Verdict.NOT_APPLICABLE:
        print(report.reason, file=sys.stderr)
        return 2
    print(format_order_table(report))
    print(f"B = {report.bound}")
    return 0


def _cmd_check(args) -> int:
    product = _single_product(parse_expression(args.expr), "check")
    verdict = modular_function_check(product, args.level)
    if args.verbose:
        for i, ok in enumerate(verdict.conditions, start=1):
            state = "holds" if ok else "fails"
            print(f"condition {i} ({_CONDITION_TEXT[i]}): {state}")
    if verdict.invariant:
        print(f"modular function on Gamma0({args.level}): yes")
        return 0
    print(f"modular function on Gamma0({args.level}): no")
    return 2


def _cmd_formcheck(args) -> int:
    product = _single_product(parse_expression(args.expr), "formcheck")
    try:
        verdict = modular_form_check(product, args.level)
    except NotAFormError as exc:
        print(f"not a form on Gamma0({args.level}): {exc}", file=sys.stderr)
        return 2
    print(f"level: {verdict.level}")
    print(f"weight: {verdict.weight}")
    print(f"character: kronecker({verdict.character_disc}, .)"
          f"   (raw {verdict.character_raw})")
    if verdict.half_integral:
        print("note: half-integral weight")
    return 0


def _read_file(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write_cert(path: str, payload: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(payload)


def build_parser() -> argparse.ArgumentParser:
    common = _ArgumentParser(add_help=False)
    common.add_argument("--quiet", action="store_true",
                        help="print only the final verdict or value")
    common.add_argument("--json", metavar="PATH", default=None,
                        help="write a machine-readable certificate to PATH")

    top = _ArgumentParser(prog="etaprover",
                          description="Prove eta-product identities on Gamma0(N).")
    top.add_argument("--version", action="version",
                     version=f"etaprover {__version__}")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prove", parents=[common],
                       help="prove a linear eta-product identity file")
    p.add_argument("file")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--margin", type=int, default=10)
    p.add_argument("--yes", action="store_true",
                   help="carry out the verification (otherwise bound only)")
    p.set_defaults(func=_cmd_prove)

    p = sub.add_parser("prove-up", parents=[common],
                       help="prove a U_p identity file")
    p.add_argument("file")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--margin", type=int, default=10)
    p.add_argument("--yes", action="store_true")
    p.set_defaults(func=_cmd_prove_up)

    p = sub.add_parser("expand", parents=[common],
                       help="q-expansion of an eta-product expression")
    p.add_argument("expr")
    p.add_argument("--depth", type=int, default=50)
    p.add_argument("--no-prefactor", action="store_true",
                   help="omit the fractional q^(t/24) prefactors")
    p.set_defaults(func=_cmd_expand)

    p = sub.add_parser("factor", parents=[common],
                       help="recognize an expression's expansion as an eta-product")
    p.add_argument("expr")
    p.add_argument("--depth", type=int, default=60)
    p.set_defaults(func=_cmd_factor)

    p = sub.add_parser("cusps", parents=[common],
                       help="inequivalent cusps of Gamma0(N)")
    p.add_argument("level", type=int)
    p.set_defaults(func=_cmd_cusps)

    p = sub.add_parser("orders", parents=[common],
                       help="per-cusp order table of a product or identity")
    p.add_argument("expr")
    p.add_argument("level", type=int)
    p.set_defaults(func=_cmd_orders)

    p = sub.add_parser("check", parents=[common],
                       help="Newman modular-function check")
    p.add_argument("expr")
    p.add_argument("level", type=int)
    p.add_argument("--verbose", action="store_true",
                   help="report each condition separately")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("formcheck", parents=[common],
                       help="modular-form-with-character check")
    p.add_argument("expr")
    p.add_argument("level", type=int)
    p.set_defaults(func=_cmd_formcheck)
    return top


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ParseError, LoweringError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except PreconditionError as exc:
        print(f"not applicable: {exc}", file=sys.stderr)
        return 2
    except EtaProverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
