"""Tanh-sinh quadrature and the integral representations of M and M1.

Nodes are generated from their distance to the nearest endpoint, so
integrands that need ``1 - u`` or ``t`` near a singular endpoint can receive
that gap exactly instead of recomputing it from a rounded abscissa.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .constants import registry
from .errors import DomainError, NonConvergence
from .numerics import EvalResult, digamma, ein
from .report import IdentityReport

LEVEL_CAP = 12
MIN_LEVEL = 3
T_MAX = 4.0
REMOVABLE_WINDOW = 1e-12
EIN_CUTOFF = 45.0
MIN_TOL = 1e-12

_HALF_PI = 0.5 * math.pi


@dataclass(frozen=True)
class Integrand:
    """An integrand with optional endpoint metadata.

    With ``uses_gaps`` set, ``evaluator`` is called as ``f(x, gap_lo, gap_hi)``
    where the gaps are the exact distances to the interval ends.
    """

    evaluator: Callable[..., float]
    singular_endpoints: frozenset = frozenset()
    removable_points: Sequence[tuple[float, float]] = ()
    uses_gaps: bool = False

    def __call__(self, x: float, gap_lo: float, gap_hi: float) -> float:
        for loc, limit in self.removable_points:
            if abs(x - loc) <= REMOVABLE_WINDOW:
                return limit
        if self.uses_gaps:
            return self.evaluator(x, gap_lo, gap_hi)
        return self.evaluator(x)


def as_integrand(f) -> Integrand:
    return f if isinstance(f, Integrand) else Integrand(f)


@dataclass(frozen=True)
class QuadResult:
    value: float
    err_estimate: float
    nodes_used: int
    converged: bool
    level_values: tuple[float, ...] = field(default=(), repr=False)

    def as_eval(self, method: str) -> EvalResult:
        return EvalResult(self.value, self.err_estimate, self.nodes_used, method)


def _node(t: float, half: float) -> tuple[float, float]:
    # gap to the nearer endpoint and weight, for abscissa parameter t >= 0
    u = _HALF_PI * math.sinh(t)
    e = math.exp(-2.0 * u)
    gap = half * 2.0 * e / (1.0 + e)
    cosh_u_sq_inv = 4.0 * e / (1.0 + e) ** 2
    weight = half * _HALF_PI * math.cosh(t) * cosh_u_sq_inv
    return gap, weight


def tanh_sinh_levels(f, a: float, b: float, max_level: int = LEVEL_CAP):
    """Yield (level, estimate, nodes_used) with the step halved each level."""
    g = as_integrand(f)
    width = b - a
    half = 0.5 * width
    mid_gap = half
    total = g(a + half, mid_gap, mid_gap) * half * _HALF_PI
    nodes = 1
    partial = [total]
    for level in range(max_level + 1):
        h = 2.0**-level
        kmax = int(T_MAX / h)
        step = 1 if level == 0 else 2
        for k in range(1, kmax + 1, step):
            gap, w = _node(k * h, half)
            if gap <= 0.0 or w == 0.0:
                continue
            far = width - gap
            partial.append(w * g(b - gap, far, gap))
            partial.append(w * g(a + gap, gap, far))
            nodes += 2
        yield level, h * math.fsum(partial), nodes


def integrate_finite(f, a: float, b: float, tol: float = 1e-10,
                     max_level: int = LEVEL_CAP) -> QuadResult:
    """Integrate over [a, b], tolerating integrable endpoint singularities."""
    if not a < b:
        raise DomainError(f"integrate_finite requires a < b, got [{a!r}, {b!r}]")
    if not tol >= MIN_TOL:
        raise DomainError(f"tolerance must be >= {MIN_TOL:g}, got {tol!r}")
    values = []
    prev = None
    diff = math.inf
    nodes = 0
    for level, est, nodes in tanh_sinh_levels(f, a, b, max_level):
        values.append(est)
        if prev is not None:
            diff = abs(est - prev)
            if level >= MIN_LEVEL and diff <= tol:
                return QuadResult(est, diff, nodes, True, tuple(values))
        prev = est
    best = QuadResult(values[-1], diff, nodes, False, tuple(values))
    raise NonConvergence(f"tanh-sinh did not reach {tol:.1e} by level {max_level} "
                         f"(last difference {diff:.3e})", best=best)


def integrate_semi_infinite(f, tol: float = 1e-10, cutoff: float = EIN_CUTOFF,
                            tail_bound: Callable[[float], float] | None = None) -> QuadResult:
    """Integrate over [0, inf) as [0, cutoff] plus a bound on the discarded tail.

    ``tail_bound(X)`` must bound the integral over [X, inf); by default an
    exponential envelope ``exp(-X) (ln X + 2)`` is assumed.
    """
    if tail_bound is None:
        tail_bound = lambda x: math.exp(-x) * (math.log(x) + 2.0)  # noqa: E731
    tail = tail_bound(cutoff)
    if tail > tol / 10.0:
        raise DomainError(f"cutoff {cutoff:g} leaves a tail bound {tail:.3e} above tol/10")
    res = integrate_finite(f, 0.0, cutoff, tol)
    return QuadResult(res.value, res.err_estimate + tail, res.nodes_used, res.converged,
                      res.level_values)


# ---------------------------------------------------------------- integral routes


def _digamma_ratio(x: float) -> float:
    return (digamma(1.0 + x) + registry().gamma) / x


def digamma_ratio_integral(lo: float, hi: float, tol: float = 1e-10) -> QuadResult:
    """int_lo^hi (psi(1+t) + gamma)/t dt; the integrand tends to zeta(2) at t = 0."""
    f = Integrand(_digamma_ratio, removable_points=((0.0, registry().zeta2),))
    return integrate_finite(f, lo, hi, tol)


def m_integral(tol: float = 1e-10) -> QuadResult:
    return digamma_ratio_integral(0.0, 1.0, tol)


def m1_integral(tol: float = 1e-10) -> QuadResult:
    return digamma_ratio_integral(1.0, 2.0, tol)


def _ein_integrand(x: float) -> float:
    return ein(x) / math.expm1(x)


def ein_tail_bound(cutoff: float) -> float:
    # Ein(x) <= ln x + gamma + 1 for x >= 1 and 1/(e^x - 1) <= e^-x / (1 - e^-X)
    c = registry().gamma + 1.0
    return math.exp(-cutoff) * (math.log(cutoff) + c + 1.0 / cutoff) / -math.expm1(-cutoff)


def ein_integral_h(tol: float = 1e-10) -> QuadResult:
    """int_0^inf Ein(x)/(e^x - 1) dx (the integrand tends to 1 at x = 0)."""
    f = Integrand(_ein_integrand, removable_points=((0.0, 1.0),))
    return integrate_semi_infinite(f, tol, EIN_CUTOFF, ein_tail_bound)


def _log_ratio(u: float, gap_lo: float, gap_hi: float) -> float:
    # (1-u) ln(1-u) / (u ln u), with 1-u = gap_hi and u = gap_lo exactly
    one_minus_u = gap_hi
    return one_minus_u * math.log(one_minus_u) / (gap_lo * math.log1p(-gap_hi))


def log_integral_i(tol: float = 1e-10) -> QuadResult:
    f = Integrand(_log_ratio, singular_endpoints=frozenset({"upper"}),
                  removable_points=((0.0, 0.0),), uses_gaps=True)
    return integrate_finite(f, 0.0, 1.0, tol)


def _remark1_integrand(t: float, gap_lo: float, gap_hi: float) -> float:
    # (1 - gamma - psi(2 - t))/t with 2 - t = 1 + gap_hi
    return (1.0 - registry().gamma - digamma(1.0 + gap_hi)) / t


def remark1_integral(tol: float = 1e-10) -> QuadResult:
    """int_0^1 (1 - gamma - psi(2-t))/t dt; the integrand tends to zeta(2) - 1 at 0."""
    f = Integrand(_remark1_integrand, removable_points=((0.0, registry().zeta2 - 1.0),),
                  uses_gaps=True)
    return integrate_finite(f, 0.0, 1.0, tol)


def _doubled_difference(t: float) -> float:
    return (digamma(1.0 + 2.0 * t) - digamma(1.0 + t)) / t


def doubled_difference_integral(tol: float = 1e-10) -> QuadResult:
    """int_0^1 (psi(1+2t) - psi(1+t))/t dt; the integrand tends to zeta(2) at 0."""
    f = Integrand(_doubled_difference, removable_points=((0.0, registry().zeta2),))
    return integrate_finite(f, 0.0, 1.0, tol)


def eq21_check(tol: float = 1e-9) -> IdentityReport:
    quad_tol = max(MIN_TOL, tol / 10.0)
    lhs = doubled_difference_integral(quad_tol).as_eval("eq21.doubled")
    rhs = m1_integral(quad_tol).as_eval("m1.integral")
    return IdentityReport.compare("eq21", lhs, rhs, tol)
