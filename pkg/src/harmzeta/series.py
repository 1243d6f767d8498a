"""Series routes to M and M1, and the fixed closed-form identities.

Every geometric-tail series is summed with :func:`sum_with_tail`: the caller
supplies a majorant for the tail beyond the current index built from the
Lemma-1 style bounds ``zeta(n) - 1 < 2^-n (n+1)/(n-1)``, whose successive
ratios never exceed 1/2.  The slowly convergent logarithmic series are summed
directly to ``N`` and finished with an Euler-Maclaurin tail whose derivatives
come from truncated Taylor arithmetic.

Route (j) feeds binomial sums with alternating signs into a weight 1/(n 2^n).
The rounding error of each inner sum is about 2^n eps, so after the weight the
contribution per term is about eps/n and plain doubles with compensated inner
sums are enough.
"""

from __future__ import annotations

import enum
import math
from typing import Callable

from . import _jet
from .constants import registry
from .errors import DomainError, ToleranceUnreachable
from .numerics import (
    EPS,
    EvalResult,
    _EM_COEFFS,
    harmonic_table,
    hurwitz_upper,
    hurwitz_zeta,
    lemma1_bounds,
    skew_harmonic_table,
    zeta_minus_one,
    zeta_prime,
)
from .report import IdentityReport
from .transforms import euler_transform_coeffs

MIN_TOL = 1e-12
GEOMETRIC_MAX_TERMS = 10_000
SLOW_SERIES_TERMS = 100_000
_TAIL_SHARE = 0.25


class SeriesMethod(enum.Enum):
    A = "thm1.a"
    B = "thm1.b"
    C = "thm1.c"
    D = "thm1.d"
    E = "thm1.e"
    F = "thm1.f"
    G = "thm1.g"
    J = "thm1.j"
    K = "prop3.k"
    L = "prop3.l"
    M_ = "prop3.m"
    GOLDBACH = "goldbach"
    EULER3 = "eq3"
    EULER4 = "eq4"
    PROP1 = "eq6"
    FURDUI7 = "eq7"
    EQ12 = "eq12"
    REMARK1 = "remark1"

    @classmethod
    def parse(cls, key) -> "SeriesMethod":
        if isinstance(key, cls):
            return key
        for m in cls:
            if key in (m.value, m.name, m.name.rstrip("_")):
                return m
        raise DomainError(f"unknown series method {key!r}")


M_METHODS = (SeriesMethod.A, SeriesMethod.B, SeriesMethod.C, SeriesMethod.D,
             SeriesMethod.E, SeriesMethod.F, SeriesMethod.G, SeriesMethod.J)
M1_METHODS = (SeriesMethod.K, SeriesMethod.L, SeriesMethod.M_)
FIXED_IDENTITIES = (SeriesMethod.GOLDBACH, SeriesMethod.EULER3, SeriesMethod.EULER4,
                    SeriesMethod.PROP1, SeriesMethod.FURDUI7, SeriesMethod.EQ12,
                    SeriesMethod.REMARK1)

# Identity id -> the series it sums and the value it is compared with.
FORMULAS = {
    "thm1.a": "sum_{n>=1} (-1)^(n-1) zeta(n+1)/n = M",
    "thm1.b": "sum_{n>=1} ln(1+1/n)/n = M",
    "thm1.c": "sum_{n>=1} ln(n+1)/(n(n+1)) = M",
    "thm1.d": "sum_{n>=1} H_n (zeta(n+1)-1) = M",
    "thm1.e": "sum_{n>=2} H_n (zeta(n)-1) = M + 1 - gamma",
    "thm1.f": "sum_{n>=1} S_n/n = M,  S_n = sum_{k>=2} 1/(k^n (k-1))",
    "thm1.g": "sum_{n>=1} H_n^- (zeta(n+1)-zeta(n+2)) = M - ln 2",
    "thm1.h": "int_0^inf Ein(x)/(e^x-1) dx = M",
    "thm1.i": "int_0^1 (1-u) ln(1-u)/(u ln u) du = M",
    "thm1.j": "sum_{n>=1} 1/(n 2^n) sum_{k=1}^n C(n,k) (-1)^(k-1) zeta(k+1) = M",
    "m.integral": "int_0^1 (psi(1+t)+gamma)/t dt = M",
    "prop3.k": "sum_{n>=1} ln(1+1/(n+1))/n = M1",
    "prop3.l": "sum_{n>=1} H_n^- (zeta(n+1)-1) = M1",
    "prop3.m": "sum_{n>=1} (-1)^(n-1) S_n/n = M1",
    "m1.integral": "int_1^2 (psi(1+t)+gamma)/t dt = M1",
    "eq21": "int_0^1 (psi(1+2t)-psi(1+t))/t dt = int_1^2 (psi(1+t)+gamma)/t dt",
    "goldbach": "sum_{n>=2} (zeta(n)-1) = 1",
    "eq3": "sum_{n>=2} (zeta(n)-1)/n = 1 - gamma",
    "eq4": "sum_{n>=2} (-1)^n zeta(n)/n = gamma",
    "eq6": "sum_{n>=2} H_n^- (zeta(n)-zeta(n+1)) = pi^2/6 - gamma - ln 2",
    "eq7": "sum_{n>=2} H_n (zeta(n)-zeta(n+1)) = pi^2/6 - gamma",
    "eq12": "sum_{n>=2} (-1)^n H_n (zeta(n)+zeta(n+1)-2) = zeta(2) + gamma - 2 + ln 2",
    "remark1": "sum_{k>=1} (zeta(k+1)-1)/k = sum_{n>=1} H_n (zeta(n+1)-zeta(n+2))",
    "remark1.integral": "int_0^1 (1-gamma-psi(2-t))/t dt = sum_{k>=1} (zeta(k+1)-1)/k",
    "prop1.partial@m": ("sum_{n=2}^m H_n^- (zeta(n)-zeta(n+1)) = zeta(2)/2 - H_{m+1}^- zeta(m+1)"
                        " + sum_{n=2}^m (-1)^n zeta(n+1)/(n+1)"),
    "prop2@p": "sum_{n>=1} ln(n+1)/n^p = -zeta'(p) + sum_{k>=1} (-1)^(k-1) zeta(p+k)/k",
}


def _check_tol(tol: float) -> None:
    if not tol >= MIN_TOL:
        raise DomainError(f"tolerance must be >= {MIN_TOL:g}, got {tol!r}")


def _upper(n: int) -> float:
    return lemma1_bounds(n)[1]


def sum_with_tail(term: Callable[[int], float], tail_bound: Callable[[int], float],
                  tol: float, start: int, method: str,
                  max_terms: int = GEOMETRIC_MAX_TERMS) -> EvalResult:
    """Sum ``term(n)`` from ``start`` until ``tail_bound(n)`` (a bound on the
    absolute tail after index n) drops below ``tol/4``."""
    parts = []
    n = start
    while True:
        parts.append(term(n))
        tb = tail_bound(n)
        if tb <= _TAIL_SHARE * tol:
            break
        if len(parts) >= max_terms:
            raise ToleranceUnreachable(
                f"{method}: tail bound {tb:.3e} after {len(parts)} terms exceeds {tol:.1e}",
                best=EvalResult(math.fsum(parts), tb, len(parts), method))
        n += 1
    value = math.fsum(parts)
    rounding = 2.0 * EPS * math.fsum(abs(p) for p in parts)
    return EvalResult(value, tb + rounding, len(parts), method)


def _geo(first: float, ratio: float) -> float:
    if ratio >= 1.0:
        return math.inf
    return first / (1.0 - ratio)


def _shift(res: EvalResult, offset: float, method: str | None = None) -> EvalResult:
    return EvalResult(res.value + offset, res.err_bound + EPS * abs(offset),
                      res.terms_used, method or res.method)


# ---------------------------------------------------------------- S_n


def s_n(n: int) -> float:
    """S_n = sum_{k>=2} 1 / (k^n (k-1)), summed directly (S_1 = 1)."""
    return s_n_eval(n).value


def s_n_eval(n: int) -> EvalResult:
    if int(n) != n or n < 1:
        raise DomainError(f"s_n requires an integer n >= 1, got {n!r}")
    if n == 1:
        return EvalResult(1.0, 0.0, 0, "s_n.telescoping")
    kmax = 30
    parts = [k**-n / (k - 1) for k in range(2, kmax + 1)]
    # 1/(k^n (k-1)) = sum_{j=1}^{J} k^(-n-j) + k^(-n-J)/(k-1) for the k > kmax tail.
    j = 1
    while True:
        parts.append(hurwitz_zeta(n + j, kmax + 1.0))
        remainder = hurwitz_upper(n + j, kmax + 1.0) / kmax
        if remainder <= 1e-18 * parts[0] or j >= 40:
            break
        j += 1
    value = math.fsum(parts)
    return EvalResult(value, remainder + 2.0 * EPS * value, len(parts), "s_n.direct")


def s_n_naive(n: int) -> float:
    """n - zeta(2) - ... - zeta(n): algebraically S_n, numerically ruined by cancellation."""
    if n < 2:
        raise DomainError(f"s_n_naive requires n >= 2, got {n!r}")
    acc = float(n)
    for j in range(2, n + 1):
        acc -= hurwitz_zeta(j, 1.0)
    return acc


# ---------------------------------------------------------------- slow series


def _li2_neg(z: float) -> float:
    # -Li2(-z) = sum_{k>=1} (-1)^(k-1) z^k / k^2 for 0 < z < 1.
    parts = []
    t = 1.0
    k = 1
    while True:
        t *= z
        term = (t if k % 2 else -t) / (k * k)
        parts.append(term)
        if abs(term) < 1e-20 * abs(parts[0]):
            break
        k += 1
    return math.fsum(parts)


def _em_tail(jet: _jet.Jet, integral: float, corrections: int) -> tuple[float, float]:
    """sum_{n>N} f(n) from the integral over [N, inf) and Taylor data at N.

    Returns (tail, estimate of the first omitted correction).
    """
    parts = [integral, -0.5 * jet.c[0]]
    for j in range(1, corrections + 1):
        # B_{2j}/(2j)! f^(2j-1)(N) = B_{2j}/(2j)! (2j-1)! c_{2j-1}
        parts.append(-_EM_COEFFS[j - 1] * math.factorial(2 * j - 1) * jet.c[2 * j - 1])
    j = corrections + 1
    omitted = abs(_EM_COEFFS[j - 1] * math.factorial(2 * j - 1) * jet.c[2 * j - 1])
    return math.fsum(parts), omitted


def _slow_series(direct: list[float], jet: _jet.Jet, integral: float, method: str,
                 tol: float) -> EvalResult:
    tail, omitted = _em_tail(jet, integral, corrections=2)
    value = math.fsum(direct) + tail
    err = omitted + 4.0 * EPS * math.fsum(abs(d) for d in direct) + EPS * abs(tail)
    if err > tol:
        raise ToleranceUnreachable(f"{method}: error estimate {err:.3e} exceeds {tol:.1e}",
                                   best=EvalResult(value, err, len(direct), method))
    return EvalResult(value, err, len(direct), method)


def _series_b(tol: float, n: int) -> EvalResult:
    direct = [math.log1p(1.0 / k) / k for k in range(1, n + 1)]
    x = _jet.Jet.variable(n, 7)
    jet = _jet.log1p(1.0 / x) / x
    return _slow_series(direct, jet, _li2_neg(1.0 / n), SeriesMethod.B.value, tol)


def _series_c(tol: float, n: int) -> EvalResult:
    direct = [math.log(k + 1.0) / (k * (k + 1.0)) for k in range(1, n + 1)]
    x = _jet.Jet.variable(n, 7)
    jet = _jet.log(x + 1.0) / (x * (x + 1.0))
    # int_N^inf ln(x+1)/(x(x+1)) dx = (ln^2(N+1) - ln^2 N)/2 - Li2(-1/N)
    logs = math.log1p(1.0 / n) * (math.log(n + 1.0) + math.log(n)) / 2.0
    return _slow_series(direct, jet, logs + _li2_neg(1.0 / n), SeriesMethod.C.value, tol)


def _series_k(tol: float, n: int) -> EvalResult:
    direct = [math.log1p(1.0 / (k + 1.0)) / k for k in range(1, n + 1)]
    x = _jet.Jet.variable(n, 7)
    jet = _jet.log1p(1.0 / (x + 1.0)) / x
    # int_N^inf ln(1+1/(x+1))/x dx = -Li2(-2/N) + Li2(-1/N)
    integral = _li2_neg(2.0 / n) - _li2_neg(1.0 / n)
    return _slow_series(direct, jet, integral, SeriesMethod.K.value, tol)


# ---------------------------------------------------------------- M routes


def m_series(method, tol: float = 1e-9, max_terms: int = SLOW_SERIES_TERMS) -> EvalResult:
    """Evaluate M by the series route ``method`` (one of A-G, J) to within ``tol``."""
    _check_tol(tol)
    m = SeriesMethod.parse(method)
    reg = registry()
    geo_cap = min(GEOMETRIC_MAX_TERMS, max_terms)
    if m is SeriesMethod.A:
        res = sum_with_tail(
            lambda n: (1.0 if n % 2 else -1.0) * zeta_minus_one(n + 1) / n,
            lambda n: _geo(_upper(n + 2) / (n + 1), 0.5),
            tol, 1, m.value, geo_cap)
        return _shift(res, reg.ln2)
    if m is SeriesMethod.B:
        return _series_b(tol, max_terms)
    if m is SeriesMethod.C:
        return _series_c(tol, max_terms)
    if m is SeriesMethod.D:
        h = harmonic_table(geo_cap + 2)
        return sum_with_tail(
            lambda n: h[n] * zeta_minus_one(n + 1),
            lambda n: _geo(h[n + 1] * _upper(n + 2), 0.5 * (1 + 1 / (n + 2))),
            tol, 1, m.value, geo_cap)
    if m is SeriesMethod.E:
        h = harmonic_table(geo_cap + 3)
        res = sum_with_tail(
            lambda n: h[n] * zeta_minus_one(n),
            lambda n: _geo(h[n + 1] * _upper(n + 1), 0.5 * (1 + 1 / (n + 2))),
            tol, 2, m.value, geo_cap)
        return _shift(res, reg.gamma - 1.0)
    if m is SeriesMethod.F:
        return sum_with_tail(
            lambda n: s_n(n) / n,
            lambda n: _geo(_upper(n + 1) / (n + 1), 0.5),
            tol, 1, m.value, geo_cap)
    if m is SeriesMethod.G:
        hs = skew_harmonic_table(geo_cap + 2)
        res = sum_with_tail(
            lambda n: hs[n] * (zeta_minus_one(n + 1) - zeta_minus_one(n + 2)),
            lambda n: _geo(_upper(n + 2), 0.5),
            tol, 1, m.value, geo_cap)
        return _shift(res, reg.ln2)
    if m is SeriesMethod.J:
        h = harmonic_table(geo_cap + 2)
        return sum_with_tail(
            lambda n: euler_transform_coeffs(_alternating_zeta, n) / (n * 2.0**n),
            lambda n: _geo((h[n + 1] + 1.0) / ((n + 1) * 2.0 ** (n + 1)), 0.5 * (1 + 1 / (n + 2))),
            tol, 1, m.value, geo_cap)
    raise DomainError(f"{m.value} is not a series route to M")


def _alternating_zeta(k: int) -> float:
    # a_k = (-1)^(k-1) zeta(k+1), a_0 = 0
    if k == 0:
        return 0.0
    z = 1.0 + zeta_minus_one(k + 1)
    return z if k % 2 else -z


def series_e_raw(tol: float = 1e-9) -> EvalResult:
    """sum_{n>=2} H_n (zeta(n)-1) without removing the 1 - gamma offset."""
    reg = registry()
    res = m_series(SeriesMethod.E, tol)
    return _shift(res, 1.0 - reg.gamma, "thm1.e.raw")


def m1_series(method, tol: float = 1e-9, max_terms: int = SLOW_SERIES_TERMS) -> EvalResult:
    """Evaluate M1 by route K, L or M_ to within ``tol``."""
    _check_tol(tol)
    m = SeriesMethod.parse(method)
    geo_cap = min(GEOMETRIC_MAX_TERMS, max_terms)
    if m is SeriesMethod.K:
        return _series_k(tol, max_terms)
    if m is SeriesMethod.L:
        hs = skew_harmonic_table(geo_cap + 2)
        return sum_with_tail(
            lambda n: hs[n] * zeta_minus_one(n + 1),
            lambda n: _geo(_upper(n + 2), 0.5),
            tol, 1, m.value, geo_cap)
    if m is SeriesMethod.M_:
        return sum_with_tail(
            lambda n: (1.0 if n % 2 else -1.0) * s_n(n) / n,
            lambda n: _geo(_upper(n + 1) / (n + 1), 0.5),
            tol, 1, m.value, geo_cap)
    raise DomainError(f"{m.value} is not a series route to M1")


# ---------------------------------------------------------------- fixed identities


def _exact(value: float, method: str, err: float = 0.0) -> EvalResult:
    return EvalResult(value, err, 0, method)


def fixed_identity(identity, tol: float = 1e-9) -> IdentityReport:
    """Evaluate one closed-form identity numerically and compare with its right side."""
    _check_tol(tol)
    m = SeriesMethod.parse(identity)
    reg = registry()
    z2, g, ln2 = reg.zeta2, reg.gamma, reg.ln2
    cap = GEOMETRIC_MAX_TERMS
    if m is SeriesMethod.GOLDBACH:
        lhs = sum_with_tail(zeta_minus_one, lambda n: _geo(_upper(n + 1), 0.5), tol, 2, m.value)
        rhs = _exact(1.0, "exact")
    elif m is SeriesMethod.EULER3:
        lhs = sum_with_tail(lambda n: zeta_minus_one(n) / n,
                            lambda n: _geo(_upper(n + 1) / (n + 1), 0.5), tol, 2, m.value)
        rhs = _exact(1.0 - g, "registry")
    elif m is SeriesMethod.EULER4:
        # sum (-1)^n zeta(n)/n = sum (-1)^n (zeta(n)-1)/n + (1 - ln 2)
        part = sum_with_tail(lambda n: (1.0 if n % 2 == 0 else -1.0) * zeta_minus_one(n) / n,
                             lambda n: _geo(_upper(n + 1) / (n + 1), 0.5), tol, 2, m.value)
        lhs = _shift(part, 1.0 - ln2)
        rhs = _exact(g, "registry")
    elif m is SeriesMethod.PROP1:
        hs = skew_harmonic_table(cap + 2)
        lhs = sum_with_tail(lambda n: hs[n] * (zeta_minus_one(n) - zeta_minus_one(n + 1)),
                            lambda n: _geo(_upper(n + 1), 0.5), tol, 2, m.value)
        rhs = _exact(z2 - g - ln2, "registry")
    elif m is SeriesMethod.FURDUI7:
        h = harmonic_table(cap + 2)
        lhs = sum_with_tail(lambda n: h[n] * (zeta_minus_one(n) - zeta_minus_one(n + 1)),
                            lambda n: _geo(h[n + 1] * _upper(n + 1), 0.5 * (1 + 1 / (n + 2))),
                            tol, 2, m.value)
        rhs = _exact(z2 - g, "registry")
    elif m is SeriesMethod.EQ12:
        h = harmonic_table(cap + 2)
        lhs = sum_with_tail(
            lambda n: (1.0 if n % 2 == 0 else -1.0) * h[n] * (zeta_minus_one(n) + zeta_minus_one(n + 1)),
            lambda n: _geo(2.0 * h[n + 1] * _upper(n + 1), 0.5 * (1 + 1 / (n + 2))),
            tol, 2, m.value)
        rhs = _exact(z2 + g - 2.0 + ln2, "registry")
    elif m is SeriesMethod.REMARK1:
        lhs = remark1_lhs(tol)
        h = harmonic_table(cap + 2)
        rhs = sum_with_tail(lambda n: h[n] * (zeta_minus_one(n + 1) - zeta_minus_one(n + 2)),
                            lambda n: _geo(h[n + 1] * _upper(n + 2), 0.5 * (1 + 1 / (n + 2))),
                            tol, 1, "remark1.abel")
    else:
        raise DomainError(f"{m.value} is not a fixed identity")
    return IdentityReport.compare(m.value, lhs, rhs, tol)


def remark1_lhs(tol: float = 1e-9) -> EvalResult:
    """sum_{k>=1} (zeta(k+1)-1)/k."""
    return sum_with_tail(lambda n: zeta_minus_one(n + 1) / n,
                         lambda n: _geo(_upper(n + 2) / (n + 1), 0.5), tol, 1, "remark1.series")


def prop1_partial_sum_check(m: int, tol: float = 1e-10) -> IdentityReport:
    """Finite partial sum of the H_n^- (zeta(n) - zeta(n+1)) series against its telescoped form."""
    if int(m) != m or m < 2:
        raise DomainError(f"prop1_partial_sum_check requires an integer m >= 2, got {m!r}")
    reg = registry()
    hs = skew_harmonic_table(m + 1)
    lhs = math.fsum(hs[n] * (zeta_minus_one(n) - zeta_minus_one(n + 1)) for n in range(2, m + 1))
    parts = [reg.zeta2 / 2.0, -hs[m + 1] * zeta_minus_one(m + 1), -hs[m + 1]]
    parts += [(1.0 if n % 2 == 0 else -1.0) * (1.0 + zeta_minus_one(n + 1)) / (n + 1)
              for n in range(2, m + 1)]
    rhs = math.fsum(parts)
    scale = math.fsum(abs(p) for p in parts)
    return IdentityReport.compare(
        f"prop1.partial@m={m}",
        EvalResult(lhs, 2.0 * EPS * m, m - 1, "partial-sum"),
        EvalResult(rhs, 2.0 * EPS * scale, m + 2, "telescoped"),
        tol)


def _prop2_lhs(p: float, tol: float, n: int = 2000) -> EvalResult:
    direct = [math.log(k + 1.0) * k**-p for k in range(1, n + 1)]
    x = _jet.Jet.variable(n, 9)
    jet = _jet.log(x + 1.0) * _jet.power(x, -p)
    q = p - 1.0
    ln_n = math.log(n)
    integral = [n**-q * (ln_n / q + 1.0 / (q * q))]
    # int_N^inf ln(1+1/x) x^-p dx = sum_k (-1)^(k-1)/k N^(1-p-k)/(p+k-1)
    k = 1
    while True:
        term = (1.0 if k % 2 else -1.0) / k * n ** (-q - k) / (q + k)
        integral.append(term)
        if abs(term) < 1e-20 * integral[0]:
            break
        k += 1
    tail, omitted = _em_tail(jet, math.fsum(integral), corrections=3)
    value = math.fsum(direct) + tail
    err = omitted + 4.0 * EPS * math.fsum(abs(d) for d in direct) + EPS * abs(tail)
    return EvalResult(value, err, n, "prop2.lhs")


def prop2_check(p: float, tol: float = 1e-8) -> IdentityReport:
    """sum ln(n+1)/n^p against -zeta'(p) + sum_k (-1)^(k-1) zeta(p+k)/k."""
    if not p > 1.0:
        raise DomainError(f"prop2_check requires p > 1, got {p!r}")
    _check_tol(tol)
    reg = registry()
    lhs = _prop2_lhs(p, tol)
    # sum (-1)^(k-1) zeta(p+k)/k = ln 2 + sum (-1)^(k-1) (zeta(p+k) - 1)/k
    series = sum_with_tail(
        lambda k: (1.0 if k % 2 else -1.0) * hurwitz_zeta(p + k, 2.0) / k,
        lambda k: _geo(hurwitz_upper(p + k + 1, 2.0) / (k + 1), 0.5),
        tol, 1, "prop2.k-series")
    zp = zeta_prime(p)
    rhs = EvalResult(math.fsum([-zp, reg.ln2, series.value]),
                     series.err_bound + 1e-14 * (1.0 + abs(zp)), series.terms_used, "prop2.rhs")
    return IdentityReport.compare(f"prop2@p={p:g}", lhs, rhs, tol)
