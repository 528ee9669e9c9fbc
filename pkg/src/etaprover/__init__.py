"""Exact q-series arithmetic and a valence-formula prover for eta-product
identities on Gamma0(N)."""

__version__ = "0.1.0"

from . import errors
from .qseries import LeadingTerm, QSeries, eta_series, euler_product
from .etaproducts import EtaCombo, EtaProduct, eta_factorize
from .modularity import (
    FormVerdict,
    ModularityVerdict,
    kronecker_symbol,
    modular_form_check,
    modular_function_check,
)
from .cusps import (
    Cusp,
    cusp_order,
    cusp_set,
    fan_width,
    gamma0_cusp_order,
    gamma0_cusp_orders,
)
from .prover import (
    ProofReport,
    Verdict,
    format_order_table,
    normalize_identity,
    prove_identity,
    sum_of_column_minima,
)
from .up import prove_up_identity, up_order_lower_bound, up_series
from .parser import LinearIdentity, UpIdentity, parse_expression, parse_program

__all__ = [
    "__version__",
    "errors",
    "QSeries", "LeadingTerm", "eta_series", "euler_product",
    "EtaProduct", "EtaCombo", "eta_factorize",
    "ModularityVerdict", "FormVerdict",
    "modular_function_check", "modular_form_check", "kronecker_symbol",
    "Cusp", "cusp_set", "fan_width",
    "cusp_order", "gamma0_cusp_order", "gamma0_cusp_orders",
    "ProofReport", "Verdict", "normalize_identity", "sum_of_column_minima",
    "prove_identity", "format_order_table",
    "up_series", "up_order_lower_bound", "prove_up_identity",
    "parse_expression", "parse_program", "LinearIdentity", "UpIdentity",
]
