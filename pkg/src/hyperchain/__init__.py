"""Principal-branch 2F1 and elliptic K, their monodromy, Pfaffian chains,
modular lambda/j by inversion, and certified rational-point counting."""
from .complex_core import MonodromyMatrix, PathSpec, branch_sqrt, principal_log
from .counting import count_rational_points, enumerate_rationals, fit_growth, height
from .elliptic import (
    continue_along_path,
    k_above_cut,
    k_below_cut,
    k_principal,
    k_split_integral,
    k_star_formula,
)
from .errors import DomainError, HyperchainError, NumericError
from .hyp2f1 import HypParams, f21, f21_euler_integral, f21_series
from .modular import j_from_lambda, lambda_from_tau, tau_from_z
from .pfaffian import ChainSpec, integrate_chain, parse_chain, verify_chain

__version__ = "0.1.0"

__all__ = [
    "MonodromyMatrix",
    "PathSpec",
    "branch_sqrt",
    "principal_log",
    "count_rational_points",
    "enumerate_rationals",
    "fit_growth",
    "height",
    "continue_along_path",
    "k_above_cut",
    "k_below_cut",
    "k_principal",
    "k_split_integral",
    "k_star_formula",
    "DomainError",
    "HyperchainError",
    "NumericError",
    "HypParams",
    "f21",
    "f21_euler_integral",
    "f21_series",
    "j_from_lambda",
    "lambda_from_tau",
    "tau_from_z",
    "ChainSpec",
    "integrate_chain",
    "parse_chain",
    "verify_chain",
]
