"""Numerical verification of zeta-value and harmonic-number series identities.

The package evaluates the constants

    M  = int_0^1 (psi(1+t) + gamma)/t dt  ~ 1.257746886944
    M1 = int_1^2 (psi(1+t) + gamma)/t dt  ~ 0.860620192853

by many independent series and integral routes, and checks the related
closed-form and generating-function identities to stated tolerances.
"""

from .constants import ConstantsRegistry, registry
from .errors import (ConstantsMismatch, DiskViolation, DomainError, HarmzetaError,
                     NonConvergence, TailBoundViolation, ToleranceUnreachable)
from .numerics import (EvalResult, digamma, ein, harmonic, hurwitz_zeta, laguerre, log_gamma,
                       riemann_zeta, skew_harmonic, zeta_minus_one, zeta_prime)
from .report import GenfunReport, IdentityReport, SuiteReport
from .series import SeriesMethod, fixed_identity, m1_series, m_series, s_n

__all__ = [
    "ConstantsMismatch", "ConstantsRegistry", "DiskViolation", "DomainError", "EvalResult",
    "GenfunReport", "HarmzetaError", "IdentityReport", "NonConvergence", "SeriesMethod",
    "SuiteReport", "TailBoundViolation", "ToleranceUnreachable", "digamma", "ein",
    "fixed_identity", "harmonic", "hurwitz_zeta", "laguerre", "log_gamma", "m1_series",
    "m_series", "registry", "riemann_zeta", "s_n", "skew_harmonic", "zeta_minus_one",
    "zeta_prime",
]

__version__ = "0.1.0"
