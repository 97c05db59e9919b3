"""Bernoulli-operator calculus: umbral sums, special functions and identity checks."""

from .bernoulli import bernoulli_number, bernoulli_polynomial
from .catalogue import list_identities, run_all, run_identity
from .jets import Jet
from .numerics import DEFAULT_PRECISION, get_precision, precision, set_precision
from .umbral import EngineConfig, UmbralResult, line_integral_value, ramanujan_sum, umbral_polynomial

set_precision(DEFAULT_PRECISION)

__all__ = [
    "EngineConfig",
    "Jet",
    "UmbralResult",
    "bernoulli_number",
    "bernoulli_polynomial",
    "get_precision",
    "line_integral_value",
    "list_identities",
    "precision",
    "ramanujan_sum",
    "run_all",
    "run_identity",
    "set_precision",
    "umbral_polynomial",
]
