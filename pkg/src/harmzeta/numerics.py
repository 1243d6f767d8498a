"""Special functions evaluated from scratch in double precision.

Digamma and log-gamma shift the argument above ``_ASYMPTOTIC_FROM`` with the
functional equations and then apply the Stirling expansion.  Hurwitz zeta and
zeta' use direct summation followed by an Euler-Maclaurin tail whose first
omitted correction bounds the truncation error (the summands are completely
monotone, so the remainder has the sign and at most the size of that term).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .constants import EULER_GAMMA
from .errors import DomainError

EPS = 2.0**-52
_ASYMPTOTIC_FROM = 10.0
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
EIN_SWITCH = 30.0
EIN_MAX = 1e4


@dataclass(frozen=True)
class EvalResult:
    """A computed value with an absolute error estimate and bookkeeping."""

    value: float
    err_bound: float
    terms_used: int
    method: str

    def __post_init__(self):
        if not self.err_bound >= 0.0:
            raise ValueError(f"err_bound must be >= 0, got {self.err_bound!r}")
        if self.terms_used < 0:
            raise ValueError(f"terms_used must be >= 0, got {self.terms_used!r}")


def _bernoulli_even(count: int) -> list[Fraction]:
    # B_0..B_{2*count} by the standard recurrence sum_{j<=m} C(m+1, j) B_j = 0.
    size = 2 * count + 1
    b = [Fraction(0)] * size
    b[0] = Fraction(1)
    for m in range(1, size):
        acc = Fraction(0)
        for j in range(m):
            acc += math.comb(m + 1, j) * b[j]
        b[m] = -acc / (m + 1)
    return [b[2 * k] for k in range(count + 1)]


BERNOULLI_EVEN = _bernoulli_even(20)
# B_{2k} / (2k)!  for k = 1..20
_EM_COEFFS = [float(BERNOULLI_EVEN[k] / math.factorial(2 * k)) for k in range(1, 21)]


def _check_finite(name: str, x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"{name} must be finite, got {x!r}")
    return x


def _two_prod(a: float, b: float) -> tuple[float, float]:
    # Dekker's error-free product: a*b == p + e exactly (absent over/underflow).
    p = a * b
    split = 134217729.0  # 2**27 + 1
    t = split * a
    ah = t - (t - a)
    al = a - ah
    t = split * b
    bh = t - (t - b)
    bl = b - bh
    e = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, e


def _reciprocal_parts(x: float) -> tuple[float, float]:
    # 1/x as an unevaluated sum hi + lo good to ~2^-104 relative.
    r = 1.0 / x
    p, e = _two_prod(r, x)
    return r, ((1.0 - p) - e) / x


def digamma(x: float) -> float:
    """psi(x) = Gamma'(x)/Gamma(x) for real x > 0."""
    x = _check_finite("x", x)
    if x <= 0.0:
        raise DomainError(f"digamma requires x > 0, got {x!r}")
    if x >= _ASYMPTOTIC_FROM:
        return _digamma_asymptotic(x)
    n = math.ceil(_ASYMPTOTIC_FROM - x)
    parts = [_digamma_asymptotic(x + n)]
    hi, lo = _reciprocal_parts(x)
    parts.append(-hi)
    parts.append(-lo)
    for k in range(1, n):
        parts.append(-1.0 / (x + k))
    return math.fsum(parts)


def _digamma_asymptotic(x: float) -> float:
    inv2 = 1.0 / (x * x)
    acc = 0.0
    power = inv2
    for k in range(1, 12):
        term = float(BERNOULLI_EVEN[k]) / (2 * k) * power
        acc += term
        if abs(term) < 1e-18:
            break
        power *= inv2
    return math.log(x) - 0.5 / x - acc


def trigamma(x: float) -> float:
    """psi'(x) for x > 0, via zeta(2, x)."""
    return hurwitz_zeta(2.0, x)


def log_gamma(x: float) -> float:
    """ln Gamma(x) for real x > 0."""
    x = _check_finite("x", x)
    if x <= 0.0:
        raise DomainError(f"log_gamma requires x > 0, got {x!r}")
    if x >= _ASYMPTOTIC_FROM:
        return _log_gamma_asymptotic(x)
    n = math.ceil(_ASYMPTOTIC_FROM - x)
    prod = 1.0
    for k in range(n):
        prod *= x + k
    return _log_gamma_asymptotic(x + n) - math.log(prod)


def _log_gamma_asymptotic(x: float) -> float:
    inv = 1.0 / x
    inv2 = inv * inv
    acc = 0.0
    power = inv
    for k in range(1, 12):
        term = float(BERNOULLI_EVEN[k]) / (2 * k * (2 * k - 1)) * power
        acc += term
        if abs(term) < 1e-18 * max(1.0, x):
            break
        power *= inv2
    return math.fsum([(x - 0.5) * math.log(x), -x, _HALF_LOG_2PI, acc])


def _hurwitz(s: float, a: float) -> tuple[float, float]:
    # Direct terms k < N, then Euler-Maclaurin from y = N + a.
    n = max(0, math.ceil(max(12.0, 0.5 * s + 8.0) - a))
    terms = []
    for k in range(n):
        term = (k + a) ** -s
        terms.append(term)
        # the rest is at most int_{k+a}^inf t^-s dt; for large s that is soon negligible
        tail = term * (k + a) / (s - 1.0)
        if tail <= 1e-18 * terms[0]:
            value = math.fsum(terms)
            return value, tail + 4.0 * EPS * len(terms) * value
    y = n + a
    y_pow = y**-s
    terms.append(y * y_pow / (s - 1.0))
    terms.append(0.5 * y_pow)
    rising = s  # (s)_{2j-1}
    power = y_pow / y  # y^{-s-2j+1}
    inv_y2 = 1.0 / (y * y)
    scale = math.fsum(terms)
    omitted = 0.0
    for j, coeff in enumerate(_EM_COEFFS, start=1):
        term = coeff * rising * power
        if abs(term) < 1e-18 * scale:
            omitted = abs(term)
            break
        terms.append(term)
        rising *= (s + 2 * j - 1) * (s + 2 * j)
        power *= inv_y2
    else:
        omitted = abs(_EM_COEFFS[-1] * rising * power)
    value = math.fsum(terms)
    err = omitted + 4.0 * EPS * len(terms) * value
    return value, err


def hurwitz_zeta(s: float, a: float) -> float:
    """zeta(s, a) = sum_{k>=0} (k+a)^-s for s > 1, a > 0."""
    s = _check_finite("s", s)
    a = _check_finite("a", a)
    if s <= 1.0:
        raise DomainError(f"hurwitz_zeta requires s > 1, got {s!r}")
    if a <= 0.0:
        raise DomainError(f"hurwitz_zeta requires a > 0, got {a!r}")
    return _hurwitz_cached(s, a)


@lru_cache(maxsize=1 << 16)
def _hurwitz_cached(s: float, a: float) -> float:
    return _hurwitz(s, a)[0]


def hurwitz_zeta_eval(s: float, a: float) -> EvalResult:
    """Like :func:`hurwitz_zeta` but also reports the error bound."""
    hurwitz_zeta(s, a)
    value, err = _hurwitz(float(s), float(a))
    return EvalResult(value, err, 0, "hurwitz.euler-maclaurin")


def hurwitz_zeta_scaled(s: float, a: float) -> float:
    """a^s zeta(s, a) = sum_{k>=0} (a/(k+a))^s, representable even when a^-s is not."""
    if s * abs(math.log(a)) < 600.0:
        return a**s * hurwitz_zeta(s, a)
    hurwitz_zeta(s, a)  # argument validation
    terms = [1.0]
    k = 1
    while True:
        ratio = a / (k + a)
        term = ratio**s
        terms.append(term)
        # remaining terms sum to at most term * (k+a)/(s-1)
        if term * (k + a) / (s - 1.0) <= 1e-17:
            break
        k += 1
    return math.fsum(terms)


def hurwitz_scaled_upper(s: float, a: float) -> float:
    """Majorant of a^s zeta(s, a); non-increasing in s."""
    return 1.0 + (a / (a + 1.0)) ** s * (s + a) / (s - 1.0)


@lru_cache(maxsize=4096)
def zeta_minus_one(n: int) -> float:
    """zeta(n) - 1 summed directly from k = 2, free of cancellation."""
    if int(n) != n or n < 2:
        raise DomainError(f"zeta_minus_one requires an integer n >= 2, got {n!r}")
    return _hurwitz(float(n), 2.0)[0]


def riemann_zeta(s: float) -> float:
    """zeta(s) for real s > 1."""
    return hurwitz_zeta(s, 1.0)


def zeta_prime(p: float) -> float:
    """zeta'(p) = -sum ln(n) n^-p for real p > 1."""
    p = _check_finite("p", p)
    if p <= 1.0:
        raise DomainError(f"zeta_prime requires p > 1, got {p!r}")
    n = 20 + math.ceil(p)
    terms = [math.log(k) * k**-p for k in range(2, n + 1)]
    ln_n = math.log(n)
    q = p - 1.0
    n_pow = float(n) ** -p
    terms.append(n * n_pow * (ln_n / q + 1.0 / (q * q)))
    terms.append(-0.5 * ln_n * n_pow)
    # f^(m)(x) = x^(-p-m) (alpha_m ln x + beta_m), starting at m = 1
    alpha, beta = -p, 1.0
    power = n_pow / n
    for j, coeff in enumerate(_EM_COEFFS[:10], start=1):
        deriv = power * (alpha * ln_n + beta)
        terms.append(-coeff * deriv)
        if abs(coeff * deriv) < 1e-20:
            break
        for m in (2 * j - 1, 2 * j):
            alpha, beta = -(p + m) * alpha, -(p + m) * beta + alpha
            power /= n
    return -math.fsum(terms)


def ein(x: float) -> float:
    """Ein(x) = sum_{n>=1} (-1)^(n-1) x^n / (n! n), the entire exponential integral."""
    x = _check_finite("x", x)
    if abs(x) > EIN_MAX:
        raise OverflowError(f"ein is restricted to |x| <= {EIN_MAX:g}, got {x!r}")
    if x == 0.0:
        return 0.0
    if x > EIN_SWITCH:
        return _ein_asymptotic(x)
    if x > 1.0:
        return _ein_positive_terms(x)
    # |x| <= 1 or x < 0: for negative x every term has the same sign.
    terms = []
    t = 1.0
    n = 1
    while True:
        t *= -x / n
        term = -t / n
        terms.append(term)
        if math.isinf(t):
            raise OverflowError(f"ein({x!r}) overflows double precision")
        if n > abs(x) and abs(term) <= 1e-17 * abs(terms[0]):
            break
        n += 1
    value = math.fsum(terms)
    if math.isinf(value):
        raise OverflowError(f"ein({x!r}) overflows double precision")
    return value


def _ein_positive_terms(x: float) -> float:
    # Ein(x) = exp(-x) sum_{n>=1} H_n x^n / n!  (all terms positive for x > 0)
    terms = []
    t = 1.0
    h = 0.0
    n = 1
    total = 0.0
    while True:
        t *= x / n
        h += 1.0 / n
        terms.append(h * t)
        total += h * t
        if n > x and h * t < 1e-18 * total:
            break
        n += 1
    return math.exp(-x) * math.fsum(terms)


def _ein_asymptotic(x: float) -> float:
    # Ein(x) = ln x + gamma + E1(x), E1 by its asymptotic series cut at the smallest term.
    acc = [1.0]
    t = 1.0
    k = 1
    while k < x:
        nxt = -t * k / x
        if abs(nxt) >= abs(t):
            break
        t = nxt
        acc.append(t)
        k += 1
    e1 = math.exp(-x) / x * math.fsum(acc)
    return math.fsum([math.log(x), EULER_GAMMA, e1])


def laguerre(n: int, x: float) -> float:
    """L_n(x) by the three-term recurrence (k+1) L_{k+1} = (2k+1-x) L_k - k L_{k-1}."""
    if int(n) != n or n < 0:
        raise DomainError(f"laguerre requires an integer n >= 0, got {n!r}")
    prev, cur = 1.0, 1.0 - x
    if n == 0:
        return prev
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 - x) * cur - k * prev) / (k + 1)
    return cur


def harmonic(n: int) -> float:
    """H_n = 1 + 1/2 + ... + 1/n, with H_0 = 0."""
    if int(n) != n or n < 0:
        raise DomainError(f"harmonic requires an integer n >= 0, got {n!r}")
    return math.fsum(1.0 / k for k in range(1, n + 1))


def skew_harmonic(n: int) -> float:
    """H_n^- = 1 - 1/2 + 1/3 - ... + (-1)^(n-1)/n, with H_0^- = 0."""
    if int(n) != n or n < 0:
        raise DomainError(f"skew_harmonic requires an integer n >= 0, got {n!r}")
    return math.fsum((1.0 if k % 2 else -1.0) / k for k in range(1, n + 1))


class _Neumaier:
    """Running compensated sum."""

    __slots__ = ("s", "c")

    def __init__(self):
        self.s = 0.0
        self.c = 0.0

    def add(self, x: float) -> None:
        t = self.s + x
        if abs(self.s) >= abs(x):
            self.c += (self.s - t) + x
        else:
            self.c += (x - t) + self.s
        self.s = t

    @property
    def value(self) -> float:
        return self.s + self.c


@lru_cache(maxsize=8)
def harmonic_table(n: int) -> tuple[float, ...]:
    """(H_0, H_1, ..., H_n) by compensated accumulation."""
    acc = _Neumaier()
    out = [0.0]
    for k in range(1, n + 1):
        acc.add(1.0 / k)
        out.append(acc.value)
    return tuple(out)


@lru_cache(maxsize=8)
def skew_harmonic_table(n: int) -> tuple[float, ...]:
    """(H_0^-, H_1^-, ..., H_n^-) by compensated accumulation."""
    acc = _Neumaier()
    out = [0.0]
    for k in range(1, n + 1):
        acc.add((1.0 if k % 2 else -1.0) / k)
        out.append(acc.value)
    return tuple(out)


def lemma1_bounds(n: int) -> tuple[float, float]:
    """Strict bounds 2^-n < zeta(n) - 1 < 2^-n (n+1)/(n-1) for n >= 2."""
    if n < 2:
        raise DomainError(f"lemma1_bounds requires n >= 2, got {n!r}")
    lo = 2.0**-n
    return lo, lo * (n + 1) / (n - 1)


def hurwitz_excess_bounds(s: float, a: float) -> tuple[float, float]:
    """Bounds (a+1)^-s < zeta(s, a) - a^-s <= (a+1)^-s (s+a)/(s-1)."""
    if s <= 1.0 or a <= 0.0:
        raise DomainError(f"hurwitz_excess_bounds requires s > 1, a > 0, got {(s, a)!r}")
    lo = (a + 1.0) ** -s
    return lo, lo * (s + a) / (s - 1.0)


def hurwitz_upper(s: float, a: float) -> float:
    """Closed-form majorant of zeta(s, a) from the excess bound."""
    return a**-s + hurwitz_excess_bounds(s, a)[1]
