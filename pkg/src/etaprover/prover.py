"""The valence-formula proof engine for linear eta-product identities.

Given an identity written as constant + sum of coefficient * eta-product
terms, the prover normalizes it, checks that every term is a modular
function on Gamma0(N), assembles the width-normalized orders at the cusps
other than infinity, computes the bound

    B = sum over those cusps of min(term orders at the cusp, 0),

and verifies that every q-coefficient of the combination through q^floor(-B)
vanishes.  By the weight-zero valence formula this is a complete proof, not
numerical evidence; extra margin coefficients are checked as a safety net.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Optional, Sequence

from .cusps import Cusp, cusp_set, gamma0_cusp_order, gamma0_cusp_orders
from .errors import (
    EmptyIdentityError,
    InternalInconsistencyError,
    MisalignedRowsError,
)
from .etaproducts import EtaCombo
from .modularity import modular_function_check

__all__ = [
    "Verdict",
    "ProofReport",
    "normalize_identity",
    "sum_of_column_minima",
    "prove_identity",
    "format_order_table",
]


class Verdict(enum.Enum):
    PROVED = "proved"
    REFUTED = "refuted"
    NOT_APPLICABLE = "not-applicable"
    BOUND_ONLY = "not-verified"


@dataclass(frozen=True)
class ProofReport:
    """Certificate data for one identity.

    ``term_orders`` holds one row per eta-product term, over ``cusps`` (the
    representatives of Gamma0(level) without the infinite class);
    ``column_minima`` is the per-cusp minimum that the bound sums, including
    the implicit all-zero row of the constant term when one is present.  For
    U_p identities ``up_bounds`` carries the Gordon-Hughes lower-bound row.
    """

    level: int
    verdict: Verdict
    bound: Fraction
    required_depth: int
    checked_depth: int
    cusps: tuple[Cusp, ...] = ()
    term_labels: tuple[str, ...] = ()
    term_orders: tuple[tuple[Fraction, ...], ...] = ()
    column_minima: tuple[Fraction, ...] = ()
    up_bounds: Optional[tuple[Fraction, ...]] = None
    up_p: Optional[int] = None
    constants_warning: bool = False
    failure: Optional[tuple[Fraction, Fraction]] = None
    reason: Optional[str] = None


def normalize_identity(combo: EtaCombo) -> EtaCombo:
    """Rewrite an identity as constant 1 plus quotient eta-products.

    Every term is divided by the first one: by the constant when it is
    nonzero, otherwise by the leading (coefficient, product) term, whose
    quotient then folds into the constant 1.  Idempotent on normalized input.
    """
    if combo.constant == 0 and not combo.terms:
        raise EmptyIdentityError("identity has no terms")
    if combo.constant != 0:
        inv = 1 / combo.constant
        return EtaCombo(1, [(a * inv, f) for a, f in combo.terms])
    a0, f0 = combo.terms[0]
    f0_inv = f0 ** -1
    return EtaCombo(0, [(a / a0, f * f0_inv) for a, f in combo.terms])


def sum_of_column_minima(
        rows: Sequence[Sequence[tuple[Cusp, Fraction]]]) -> Fraction:
    """Sum over cusp columns of the columnwise minimum order.

    Every row must carry the same cusp sequence in the same order.
    """
    if not rows:
        raise MisalignedRowsError("no order rows given")
    cusps = [s for s, _ in rows[0]]
    for row in rows[1:]:
        if [s for s, _ in row] != cusps:
            raise MisalignedRowsError("order rows have different cusp sequences")
    total = Fraction(0)
    for col in zip(*rows):
        total += min(v for _, v in col)
    return total


def _modularity_failures(terms, level) -> Optional[str]:
    bad = []
    for i, (_, f) in enumerate(terms, start=1):
        verdict = modular_function_check(f, level)
        if not verdict.invariant:
            conds = ",".join(str(k) for k in verdict.failed)
            bad.append(f"term {i} = {f} fails condition(s) {conds}")
    if bad:
        return (f"not every term is a modular function on Gamma0({level}): "
                + "; ".join(bad))
    return None


def _total_order_failures(terms, level, all_cusps) -> Optional[str]:
    bad = []
    for i, (_, f) in enumerate(terms, start=1):
        total = sum((gamma0_cusp_order(f, level, s) for s in all_cusps),
                    Fraction(0))
        if total != 0:
            bad.append(f"term {i} = {f} has total cusp order {total}")
    if bad:
        return "nonzero total order: " + "; ".join(bad)
    return None


def _not_applicable(level: int, reason: str, *, up_p=None) -> ProofReport:
    return ProofReport(
        level=level, verdict=Verdict.NOT_APPLICABLE, bound=Fraction(0),
        required_depth=0, checked_depth=-1, up_p=up_p, reason=reason)


def _scan_vanishing(series, required_depth: int):
    """Classify an expansion that must vanish through q^required_depth.

    Returns (verdict, failure) where failure is the first offending
    (exponent, coefficient) for a refutation.  A nonzero coefficient beyond
    the required depth but inside the checked window contradicts the valence
    bound and is raised as an internal error.
    """
    lead = series.leading_term()
    if lead is None:
        return Verdict.PROVED, None
    if lead.exponent <= required_depth:
        return Verdict.REFUTED, (lead.exponent, Fraction(lead.coefficient))
    raise InternalInconsistencyError(
        f"expansion vanishes through q^{required_depth} as the valence bound "
        f"requires, yet has a nonzero coefficient at q^{lead.exponent}")


def prove_identity(combo: EtaCombo, level: int, margin: int = 10,
                   verify: bool = True) -> ProofReport:
    """Prove or refute ``combo == 0`` as an identity of modular functions.

    The combination is normalized first.  Verdicts:

    * ``PROVED``: every coefficient through q^floor(-B) vanishes (a complete
      proof by the valence formula);
    * ``REFUTED``: a concrete nonvanishing coefficient is reported;
    * ``NOT_APPLICABLE``: some term is not modular on Gamma0(level), with the
      offending conditions listed;
    * ``BOUND_ONLY`` when ``verify`` is false: stop after computing B.

    ``margin`` extra coefficients beyond the required depth are expanded and
    checked as a consistency safety net.
    """
    if not isinstance(level, int) or level < 1:
        raise ValueError("level must be a positive integer")
    constants_warning = combo.constant != 0 and bool(combo.terms)
    if combo.constant == 0 and not combo.terms:
        return ProofReport(level=level, verdict=Verdict.PROVED,
                           bound=Fraction(0), required_depth=0,
                           checked_depth=0)
    normalized = normalize_identity(combo)
    terms = normalized.terms
    if not terms:
        # nothing but a nonzero constant: false at q^0
        return ProofReport(
            level=level, verdict=Verdict.REFUTED, bound=Fraction(0),
            required_depth=0, checked_depth=0,
            constants_warning=constants_warning,
            failure=(Fraction(0), Fraction(1)))
    reason = _modularity_failures(terms, level)
    if reason:
        return _not_applicable(level, reason)
    all_cusps = cusp_set(level)
    reason = _total_order_failures(terms, level, all_cusps)
    if reason:
        return _not_applicable(level, reason)
    cusps = [s for s in all_cusps if s.c != level]
    zero_row = [(s, Fraction(0)) for s in cusps]
    rows = [gamma0_cusp_orders(f, cusps, level) for _, f in terms]
    bound = sum_of_column_minima([zero_row] + rows)
    minima = tuple(min(v for _, v in col) for col in zip(zero_row, *rows))
    required = floor(-bound)
    base = dict(
        level=level, bound=bound, required_depth=required,
        cusps=tuple(cusps), term_labels=tuple(str(f) for _, f in terms),
        term_orders=tuple(tuple(v for _, v in row) for row in rows),
        column_minima=minima, constants_warning=constants_warning)
    if not verify:
        return ProofReport(verdict=Verdict.BOUND_ONLY, checked_depth=-1, **base)
    depth = required + max(margin, 1)
    g = normalized.expand(Fraction(depth))
    verdict, failure = _scan_vanishing(g, required)
    return ProofReport(verdict=verdict, checked_depth=depth - 1,
                       failure=failure, **base)


def format_order_table(report: ProofReport) -> str:
    """Render the per-cusp order table: one row per cusp, one column per
    term, the Gordon-Hughes bound column when present, and the columnwise
    minimum that the bound B sums."""
    headers = ["cusp"]
    headers += [f"ORD(f_{i})" for i in range(1, len(report.term_orders) + 1)]
    if report.up_bounds is not None:
        headers.append(f"U_{report.up_p} bound")
    headers.append("lower bound")
    table = [headers]
    for col, cusp in enumerate(report.cusps):
        row = [str(cusp)]
        row += [str(orders[col]) for orders in report.term_orders]
        if report.up_bounds is not None:
            row.append(str(report.up_bounds[col]))
        row.append(str(report.column_minima[col]))
        table.append(row)
    widths = [max(len(r[i]) for r in table) for i in range(len(headers))]
    lines = []
    for n, row in enumerate(table):
        lines.append(" | ".join(cell.rjust(w) for cell, w in zip(row, widths)))
        if n == 0:
            lines.append("-+-".join("-" * w for w in widths))
    return "\n".join(lines)
