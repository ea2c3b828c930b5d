"""Degree <= 2 factors of f(X) - g(Y): classification, certificates and an
exhaustive oracle, over Q and small finite fields."""

from .bipoly import BiPoly, QuadPoly, difference_poly, quad_factors_exhaustive
from .classify import Certificate, ConstraintError, classify_pair, construct_case, verify_certificate
from .config import DEFAULT, BudgetExceeded, Config, load_config
from .field import GF, FieldCtx, FieldError, rationals
from .parsing import format_poly, parse_field, parse_poly
from .unipoly import UniPoly, compose, dickson

__all__ = [
    "BiPoly", "QuadPoly", "difference_poly", "quad_factors_exhaustive",
    "Certificate", "ConstraintError", "classify_pair", "construct_case", "verify_certificate",
    "DEFAULT", "BudgetExceeded", "Config", "load_config",
    "GF", "FieldCtx", "FieldError", "rationals",
    "format_poly", "parse_field", "parse_poly",
    "UniPoly", "compose", "dickson",
]
__version__ = "0.1.0"
