"""Summation by parts, Euler's series transformation and the Lemma-3 re-expansions.

The skew-harmonic integral representation used here,

    H_n^- = int_0^1 (1 - (-t)^n) / (1 + t) dt,

follows from the representation ``sum H_n^- a_n x^n = int_0^1 (f(x) - f(-xt))/(t+1) dt``
by taking ``a_n = 1`` at a single index n: the integrand collapses to the finite
geometric sum ``sum_{k<n} (-t)^k``, whose integral is H_n^- term by term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .errors import DomainError, TailBoundViolation
from .numerics import (
    EPS,
    EvalResult,
    harmonic,
    harmonic_table,
    hurwitz_upper,
    hurwitz_zeta,
    laguerre,
    skew_harmonic,
    skew_harmonic_table,
    zeta_minus_one,
)
from .quadrature import Integrand, integrate_finite, integrate_semi_infinite
from .report import IdentityReport

EULER_CAP = 1000
BINOMIAL_EXACT_MAX = 56
ABEL_REL_TOL = 1e-12


@dataclass(frozen=True)
class FiniteSequence:
    start: int
    values: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if not self.values:
            raise DomainError("FiniteSequence must be non-empty")

    @property
    def end(self) -> int:
        return self.start + len(self.values) - 1

    def __getitem__(self, k: int) -> float:
        if not self.start <= k <= self.end:
            raise IndexError(f"index {k} outside {self.start}..{self.end}")
        return self.values[k - self.start]


def abel_transform_check(a: FiniteSequence, b: FiniteSequence, n: int | None = None,
                         identity_id: str = "lemma2") -> IdentityReport:
    """Check sum_{k=p}^n a_k b_k = b_n A_n + sum_{k=p}^{n-1} A_k (b_k - b_{k+1}).

    The tolerance is 1e-12 relative to the total magnitude of the terms
    involved, which stays meaningful when the sums themselves cancel.
    """
    p = a.start
    if b.start != p:
        raise DomainError(f"sequences start at different indices ({a.start} vs {b.start})")
    if n is None:
        n = min(a.end, b.end)
    if not (n > p and n <= a.end and n <= b.end):
        raise DomainError(f"n={n} must satisfy {p} < n <= {min(a.end, b.end)}")
    prods = [a[k] * b[k] for k in range(p, n + 1)]
    partial = partial_sums(a, n)
    rhs_terms = [b[n] * partial[-1]]
    rhs_terms += [partial[k - p] * (b[k] - b[k + 1]) for k in range(p, n)]
    lhs = math.fsum(prods)
    rhs = math.fsum(rhs_terms)
    scale = math.fsum(abs(t) for t in prods) + math.fsum(abs(t) for t in rhs_terms)
    tol = ABEL_REL_TOL * scale
    return IdentityReport.compare(
        identity_id,
        EvalResult(lhs, EPS * scale, len(prods), "abel.lhs"),
        EvalResult(rhs, EPS * scale, len(rhs_terms), "abel.rhs"),
        tol)


def partial_sums(a: FiniteSequence, n: int) -> list[float]:
    """A_k = a_p + ... + a_k for k = p..n (compensated)."""
    out = []
    terms = []
    for k in range(a.start, n + 1):
        terms.append(a[k])
        out.append(math.fsum(terms))
    return out


@lru_cache(maxsize=256)
def binomial_row(n: int) -> tuple[float, ...]:
    """C(n, 0..n) by Pascal's rule in floating point; exact for n <= 56."""
    row = [1.0]
    for _ in range(n):
        row = [1.0] + [row[j] + row[j + 1] for j in range(len(row) - 1)] + [1.0]
    return tuple(row)


def euler_transform_coeffs(a: Callable[[int], float], n: int) -> float:
    """b_n = sum_{k=0}^n C(n, k) a(k), with compensated summation."""
    if int(n) != n or n < 0:
        raise DomainError(f"euler_transform_coeffs requires an integer n >= 0, got {n!r}")
    if n > EULER_CAP:
        raise DomainError(f"n={n} exceeds the Euler transform cap {EULER_CAP}")
    row = binomial_row(n)
    return math.fsum(row[k] * a(k) for k in range(n + 1))


def _alternating_zeta(k: int) -> float:
    if k == 0:
        return 0.0
    z = 1.0 + zeta_minus_one(k + 1)
    return z if k % 2 else -z


def laguerre_cutoff(tol: float) -> float:
    # |L_n(x)| <= e^(x/2), so the tail past X is below (e^-X + 2 e^(-X/2)) / (1 - e^-X)
    return max(45.0, 2.0 * math.log(40.0 / tol))


def _laguerre_tail(x: float) -> float:
    return (math.exp(-x) + 2.0 * math.exp(-0.5 * x)) / -math.expm1(-x)


def laguerre_binomial_check(n: int, tol: float = 1e-8) -> IdentityReport:
    """sum_k C(n,k) (-1)^(k-1) zeta(k+1) against int_0^inf (1 - L_n(x))/(e^x - 1) dx."""
    if int(n) != n or not 1 <= n <= 12:
        raise DomainError(f"laguerre_binomial_check requires 1 <= n <= 12, got {n!r}")
    lhs = euler_transform_coeffs(_alternating_zeta, n)
    f = Integrand(lambda x: (1.0 - laguerre(n, x)) / math.expm1(x), removable_points=((0.0, float(n)),))
    quad_tol = max(1e-12, tol / 10.0)
    quad = integrate_semi_infinite(f, quad_tol, laguerre_cutoff(quad_tol), _laguerre_tail)
    return IdentityReport.compare(
        f"laguerre.identity@n={n}",
        EvalResult(lhs, 2.0 ** n * EPS * 2.0, n + 1, "binomial-sum"),
        quad.as_eval("laguerre.quadrature"),
        tol)


def _harmonic_rep_integrand(n: int):
    def f(t, gap_lo, gap_hi):
        # (t^n - 1)/(t - 1) with 1 - t = gap_hi
        if gap_hi > 0.5:
            return (1.0 - gap_lo**n) / gap_hi
        return -math.expm1(n * math.log1p(-gap_hi)) / gap_hi
    return Integrand(f, removable_points=((1.0, float(n)),), uses_gaps=True)


def harmonic_rep_check(n: int, tol: float = 1e-10) -> IdentityReport:
    """H_n against int_0^1 (t^n - 1)/(t - 1) dt."""
    if int(n) != n or not 1 <= n <= 50:
        raise DomainError(f"harmonic_rep_check requires 1 <= n <= 50, got {n!r}")
    quad = integrate_finite(_harmonic_rep_integrand(n), 0.0, 1.0, tol / 10.0)
    return IdentityReport.compare(
        f"harmonic.integral@n={n}", quad.as_eval("tanh-sinh"),
        EvalResult(harmonic(n), EPS * n, n, "direct"), tol)


def skew_rep_check(n: int, tol: float = 1e-10) -> IdentityReport:
    """H_n^- against int_0^1 (1 - (-t)^n)/(1 + t) dt."""
    if int(n) != n or not 1 <= n <= 50:
        raise DomainError(f"skew_rep_check requires 1 <= n <= 50, got {n!r}")
    sign = -1.0 if n % 2 else 1.0
    quad = integrate_finite(lambda t: (1.0 - sign * t**n) / (1.0 + t), 0.0, 1.0, tol / 10.0)
    return IdentityReport.compare(
        f"skew.integral@n={n}", quad.as_eval("tanh-sinh"),
        EvalResult(skew_harmonic(n), EPS * n, n, "direct"), tol)


# ---------------------------------------------------------------- derivative-series identities


@dataclass(frozen=True)
class DerivativeOracle:
    """Scaled derivatives f^(k)(x)/k! of a power series f with f(0) = 0."""

    evaluator: Callable[[int, float], float]
    cap: int = 10_000
    name: str = "f"

    def __call__(self, k: int, x: float) -> float:
        if not 1 <= k <= self.cap:
            raise DomainError(f"derivative order {k} outside 1..{self.cap}")
        return self.evaluator(k, x)


def _lemma3_check(identity_id: str, weight: Callable[[int], float], f: DerivativeOracle,
                  series_lhs, x: float, K: int, tol: float, tail_bound) -> IdentityReport:
    tb = tail_bound(K, x) if callable(tail_bound) else float(tail_bound)
    if tb > tol:
        raise TailBoundViolation(f"{identity_id}: tail bound {tb:.3e} after K={K} exceeds {tol:.1e}")
    terms = []
    xk = 1.0
    for k in range(1, K + 1):
        xk *= x
        if xk == 0.0:
            break
        sign = 1.0 if k % 2 else -1.0
        terms.append(sign * weight(k) / k * xk * f(k, x))
    rhs = EvalResult(math.fsum(terms), tb + 2.0 * EPS * math.fsum(abs(t) for t in terms),
                     len(terms), "lemma3.derivative-series")
    lhs = series_lhs(x)
    if not isinstance(lhs, EvalResult):
        lhs = EvalResult(float(lhs), 0.0, 0, "oracle")
    return IdentityReport.compare(identity_id, lhs, rhs, tol)


def lemma3_harmonic_check(f: DerivativeOracle, series_lhs, x: float, K: int,
                          tol: float = 1e-10, tail_bound=0.0) -> IdentityReport:
    """sum H_n a_n x^n against sum_k (-1)^(k-1)/k x^k f^(k)(x)/k!."""
    return _lemma3_check(f"lemma3.16:{f.name}@x={x:g}", lambda k: 1.0, f, series_lhs, x, K, tol,
                         tail_bound)


def lemma3_skew_check(f: DerivativeOracle, series_lhs, x: float, K: int,
                      tol: float = 1e-10, tail_bound=0.0) -> IdentityReport:
    """sum H_n^- a_n x^n against sum_k (-1)^(k-1) (2^k - 1)/k x^k f^(k)(x)/k!."""
    return _lemma3_check(f"lemma3.17:{f.name}@x={x:g}", lambda k: 2.0**k - 1.0, f, series_lhs, x,
                         K, tol, tail_bound)


def _choose_k(tail_bound, x: float, tol: float, kmax: int = 5000) -> int:
    k = 1
    while tail_bound(k, x) > tol:
        k += 1
        if k > kmax:
            raise TailBoundViolation(f"no K <= {kmax} certifies {tol:.1e} at x={x:g}")
    return k


def power_series(coeff: Callable[[int], float], majorant: Callable[[int], float],
                 ratio: Callable[[int], float], x: float, tol: float, method: str,
                 start: int = 1, max_terms: int = 100_000) -> EvalResult:
    """sum_{n>=start} coeff(n) x^n.

    ``|coeff(n)| <= majorant(n)`` must hold, and ``ratio(n)`` must bound
    ``majorant(m+1) |x| / majorant(m)`` for every m > n; the tail after n is
    then at most ``majorant(n+1) |x|^(n+1) / (1 - ratio(n))``.
    """
    parts = []
    ax = abs(x)
    n = start
    xn = x**start
    while True:
        parts.append(coeff(n) * xn)
        if x == 0.0:
            tail = 0.0
            break
        r = ratio(n)
        tail = majorant(n + 1) * ax ** (n + 1) / (1.0 - r) if r < 1.0 else math.inf
        if tail <= tol / 4.0:
            break
        if len(parts) >= max_terms:
            raise TailBoundViolation(f"{method}: tail {tail:.3e} after {len(parts)} terms at x={x:g}")
        n += 1
        xn *= x
    rounding = 2.0 * EPS * math.fsum(abs(p) for p in parts)
    return EvalResult(math.fsum(parts), tail + rounding, len(parts), method)


def rational_oracle() -> DerivativeOracle:
    """f(t) = t/(1-t), so a_n = 1 and f^(k)(x)/k! = (1-x)^-(k+1)."""
    return DerivativeOracle(lambda k, x: (1.0 - x) ** -(k + 1), name="t/(1-t)")


def zeta_oracle(a: float) -> DerivativeOracle:
    """f(t) = sum zeta(n+1, a) t^n = psi(a) - psi(a-t), so f^(k)(x)/k! = zeta(k+1, a-x)."""
    return DerivativeOracle(lambda k, x: hurwitz_zeta(k + 1.0, a - x), name=f"psi-shift(a={a:g})")


def rational_case(x: float, skew: bool, tol: float = 1e-10) -> IdentityReport:
    """The derivative-series identity for f(t) = t/(1-t) at 0 <= x, with the series side summed directly."""
    w = 2.0 if skew else 1.0
    rho = w * x / (1.0 - x)
    if rho >= 1.0:
        raise DomainError(f"derivative series diverges at x={x:g} (ratio {rho:.3g})")

    def tail(k, x):
        return rho ** (k + 1) / ((k + 1) * (1.0 - x) * (1.0 - rho))

    K = _choose_k(tail, x, tol / 4.0)
    table = skew_harmonic_table(100_000) if skew else harmonic_table(100_000)
    bound = (lambda n: 1.0) if skew else (lambda n: 1.0 + math.log(n))

    def lhs(x):
        return power_series(lambda n: table[n], bound, lambda n: abs(x) * (1.0 + 1.0 / (n + 1)),
                            x, tol, "series")

    check = lemma3_skew_check if skew else lemma3_harmonic_check
    return check(rational_oracle(), lhs, x, K, tol, tail)


def zeta_case(a: float, x: float, skew: bool, tol: float = 1e-10) -> IdentityReport:
    """The derivative-series identity for f(t) = psi(a) - psi(a-t) at 0 <= x, against the series with zeta(n+1, a) weights."""
    w = 2.0 if skew else 1.0
    b = a - x
    rho = w * x / b
    if b <= 0.0 or rho >= 1.0:
        raise DomainError(f"derivative series diverges at a={a:g}, x={x:g}")

    def tail(k, x):
        return (w * x) ** (k + 1) * hurwitz_upper(k + 2.0, b) / ((k + 1) * (1.0 - rho))

    K = _choose_k(tail, x, tol / 4.0)
    table = skew_harmonic_table(100_000) if skew else harmonic_table(100_000)
    h_bound = (lambda n: 1.0) if skew else (lambda n: 1.0 + math.log(n))

    def lhs(x):
        return power_series(lambda n: table[n] * hurwitz_zeta(n + 1.0, a),
                            lambda n: h_bound(n) * hurwitz_upper(n + 1.0, a),
                            lambda n: abs(x) / a * (1.0 + 1.0 / (n + 1)), x, tol, "series")

    check = lemma3_skew_check if skew else lemma3_harmonic_check
    return check(zeta_oracle(a), lhs, x, K, tol, tail)
