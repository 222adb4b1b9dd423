"""Ostrowski-type inequalities for functions with s-convex second derivative.

Every bound is evaluated against an adaptive Simpson oracle, and its
convexity hypothesis is checked by sampling before a failure counts as a
counterexample.
"""

from ._backend import BACKEND
from .bounds import Options, evaluate
from .campaign import CampaignReport, VerificationCampaign, run_campaign, sweep
from .convexity import ConvexityReport, SParams, Verdict, check_s_concave, check_s_convex, hadamard_check
from .errors import DomainError, MaxDepthExceeded, NonFiniteValue, OstrowskiError, ParamError
from .funcmodel import Derived, FunctionSpec, Interval, sup_abs_d1, sup_abs_d2
from .kernels import identity_residual, lemma1_rhs, ostrowski_functional
from .means import MeansInput, arithmetic_mean, gen_log_mean, identric_mean, prop_log_identric, prop_power_bound
from .quadrature import QuadratureConfig, QuadResult, integrate, moment_beta, moment_s2
from .results import EQUATIONS, BoundResult

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "BoundResult", "CampaignReport", "ConvexityReport", "Derived", "DomainError", "EQUATIONS",
    "FunctionSpec", "Interval", "MaxDepthExceeded", "MeansInput", "NonFiniteValue", "Options", "OstrowskiError",
    "ParamError", "QuadResult", "QuadratureConfig", "SParams", "Verdict", "VerificationCampaign",
    "arithmetic_mean", "check_s_concave", "check_s_convex", "evaluate", "gen_log_mean", "hadamard_check",
    "identity_residual", "identric_mean", "integrate", "lemma1_rhs", "moment_beta", "moment_s2",
    "ostrowski_functional", "prop_log_identric", "prop_power_bound", "run_campaign", "sup_abs_d1",
    "sup_abs_d2", "sweep",
]
