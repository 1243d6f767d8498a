"""Grid checks of the zeta / harmonic-number power-series identities.

Every series here has the shape ``sum w(n) zeta(n + shift, b) x^n``.  It is
summed in the variable ``y = x / b`` with the scaled coefficient
``b^s zeta(s, b)``, which stays near 1 however large n gets, so points near
the disk edge need no special care against overflow.  Tails are bounded with
the Hurwitz excess bound (``b^s zeta(s, b) <= 1 + (b/(b+1))^s (s+b)/(s-1)``)
together with ``H_n <= 1 + ln n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .constants import registry
from .errors import DiskViolation, DomainError
from .numerics import (EvalResult, digamma, harmonic_table, hurwitz_scaled_upper,
                       hurwitz_zeta, hurwitz_zeta_scaled, log_gamma, skew_harmonic_table,
                       zeta_minus_one)
from .quadrature import Integrand, integrate_finite
from .report import FAIL, PASS, GenfunReport, IdentityReport
from .series import SeriesMethod, fixed_identity
from .transforms import power_series

SERIES_TOL = 1e-10
IDENTITY_TOL = 1e-9
EDGE_FRACTION = 0.95
ROUTE2_MAX_RATIO = 0.9
_TABLE_SIZE = 100_000

DEFAULT_A = (0.5, 1.0, 2.0, 3.7, 10.0)
DEFAULT_FRACTIONS = (-0.9, -0.5, -0.1, 0.1, 0.5, 0.9)

# radius rules
R_ONE = "|x|<1"
R_TWO = "|x|<2"
R_A = "|x|<a"
R_A1 = "|x|<a+1"


def radius(rule: str, a: float | None) -> float:
    if rule == R_ONE:
        return 1.0
    if rule == R_TWO:
        return 2.0
    if a is None or not a > 0.0:
        raise DomainError(f"radius rule {rule} needs a > 0, got {a!r}")
    return a if rule == R_A else a + 1.0


@dataclass(frozen=True)
class GridSpec:
    """(a, x) sample points with x = fraction * radius(a)."""

    a_values: Sequence[float] = DEFAULT_A
    x_fractions: Sequence[float] = DEFAULT_FRACTIONS
    radius_rule: str = R_A

    def __post_init__(self):
        if not self.a_values:
            raise DomainError("GridSpec needs at least one a value")
        if any(not a > 0.0 for a in self.a_values):
            raise DomainError(f"a values must be positive, got {list(self.a_values)}")
        if any(not -1.0 < f < 1.0 for f in self.x_fractions):
            raise DomainError(f"x fractions must lie in (-1, 1), got {list(self.x_fractions)}")
        if self.radius_rule not in (R_ONE, R_TWO, R_A, R_A1):
            raise DomainError(f"unknown radius rule {self.radius_rule!r}")

    @property
    def uses_a(self) -> bool:
        return self.radius_rule in (R_A, R_A1)

    def points(self) -> Iterator[tuple[float | None, float]]:
        """Distinct (a, x) pairs; a is None for identities that do not involve it."""
        seen = set()
        for a in (self.a_values if self.uses_a else (None,)):
            r = radius(self.radius_rule, a)
            for f in self.x_fractions:
                pt = (a, f * r)
                if pt not in seen:
                    seen.add(pt)
                    yield pt


def _require_disk(x: float, r: float, what: str) -> None:
    if not abs(x) < r:
        raise DiskViolation(f"{what}: |x| = {abs(x):g} is outside the disk of radius {r:g}")


def _point_id(base: str, a: float | None, x: float) -> str:
    if a is None:
        return f"{base}@x={x:g}"
    return f"{base}@a={a:g},x={x:g}"


def _zero() -> EvalResult:
    return EvalResult(0.0, 0.0, 0, "trivial")


# ---------------------------------------------------------------- series engine


def _weights(kind: str) -> tuple[Callable[[int], float], Callable[[int], float], Callable[[int], float]]:
    """(weight, majorant of |weight|, bound on majorant(m+1)/majorant(m) for m > n)."""
    if kind == "one":
        return (lambda n: 1.0), (lambda n: 1.0), (lambda n: 1.0)
    if kind == "inv":
        return (lambda n: 1.0 / n), (lambda n: 1.0 / n), (lambda n: 1.0)
    if kind == "alt":
        return (lambda n: 1.0 if n % 2 else -1.0), (lambda n: 1.0), (lambda n: 1.0)
    if kind == "harmonic":
        h = harmonic_table(_TABLE_SIZE)
        return (lambda n: h[n]), (lambda n: 1.0 + math.log(n)), (lambda n: 1.0 + 1.0 / (n + 1))
    if kind == "skew":
        h = skew_harmonic_table(_TABLE_SIZE)
        return (lambda n: h[n]), (lambda n: 1.0), (lambda n: 1.0)
    raise ValueError(kind)


def zeta_power_series(kind: str, shift: int, b: float, x: float, start: int,
                      tol: float = SERIES_TOL, method: str = "series") -> EvalResult:
    """sum_{n>=start} w(n) zeta(n + shift, b) x^n, for |x| < b."""
    _require_disk(x, b, method)
    w, w_major, w_ratio = _weights(kind)
    y = x / b
    scale = b**-shift

    def coeff(n):
        return w(n) * hurwitz_zeta_scaled(n + shift, b) * scale

    def majorant(n):
        return w_major(n) * hurwitz_scaled_upper(n + shift, b) * scale

    return power_series(coeff, majorant, lambda n: abs(y) * w_ratio(n), y, tol, method, start)


def _closed(value: float, method: str) -> EvalResult:
    return EvalResult(value, 4.0 * 2.0**-52 * max(1.0, abs(value)), 0, method)


# ---------------------------------------------------------------- classical expansions


def eq5_check(x: float, tol: float = 1e-10) -> IdentityReport:
    """sum (-1)^(n-1) zeta(n+1) x^n = psi(1+x) + gamma."""
    _require_disk(x, 1.0, "eq5")
    ident = _point_id("eq5", None, x)
    if x == 0.0:
        return IdentityReport.compare(ident, _zero(), _zero(), tol)
    lhs = zeta_power_series("alt", 1, 1.0, x, 1, tol / 10.0, "eq5.series")
    rhs = _closed(digamma(1.0 + x) + registry().gamma, "digamma")
    return IdentityReport.compare(ident, lhs, rhs, tol)


def eq18_check(a: float, x: float, tol: float = 1e-10) -> IdentityReport:
    """sum_{n>=1} zeta(n+1, a) x^n = psi(a) - psi(a - x)."""
    _require_disk(x, a, "eq18")
    ident = _point_id("eq18", a, x)
    lhs = zeta_power_series("one", 1, a, x, 1, tol / 10.0, "eq18.series")
    rhs = _closed(digamma(a) - digamma(a - x), "digamma")
    return IdentityReport.compare(ident, lhs, rhs, tol)


def eq1_check(x: float, tol: float = 1e-10) -> IdentityReport:
    """sum_{n>=2} (zeta(n) - 1) x^(n-1) = 1 - gamma - psi(2 - x)."""
    _require_disk(x, 2.0, "eq1")
    ident = _point_id("eq1", None, x)
    lhs = _integer_zeta_series(x, "eq1.series", tol / 10.0)
    rhs = _closed(1.0 - registry().gamma - digamma(2.0 - x), "digamma")
    return IdentityReport.compare(ident, lhs, rhs, tol)


def eq2_check(x: float, tol: float = 1e-10) -> IdentityReport:
    """sum_{n>=2} (zeta(n) - 1) x^n / n = (1 - gamma) x + ln Gamma(2 - x)."""
    _require_disk(x, 2.0, "eq2")
    ident = _point_id("eq2", None, x)
    if x == 0.0:
        return IdentityReport.compare(ident, _zero(), _zero(), tol)
    lhs = zeta_power_series("inv", 0, 2.0, x, 2, tol / 10.0, "eq2.series")
    rhs = _closed((1.0 - registry().gamma) * x + log_gamma(2.0 - x), "log_gamma")
    return IdentityReport.compare(ident, lhs, rhs, tol)


def eq1_eq2_check(x: float, tol: float = 1e-10) -> tuple[IdentityReport, IdentityReport]:
    return eq1_check(x, tol), eq2_check(x, tol)


def _zm1_scaled(n: int) -> float:
    """2^n (zeta(n) - 1), from the cancellation-free zeta(n) - 1 while that is representable."""
    if n < 1000:
        return math.ldexp(zeta_minus_one(n), n)
    return hurwitz_zeta_scaled(float(n), 2.0)


def _integer_zeta_series(x: float, method: str, tol: float) -> EvalResult:
    """sum_{n>=1} (zeta(n+1) - 1) x^n, summed in y = x / 2."""
    y = x / 2.0
    ratio = abs(y)
    return power_series(lambda n: 0.5 * _zm1_scaled(n + 1),
                        lambda n: 0.5 * hurwitz_scaled_upper(n + 1, 2.0),
                        lambda n: ratio, y, tol, method, 1)


def eq9_check(a: float, x: float, tol: float = 1e-10) -> IdentityReport:
    """sum_{n>=2} zeta(n, a) x^n / n = ln Gamma(a - x) - ln Gamma(a) + psi(a) x."""
    _require_disk(x, a, "eq9")
    ident = _point_id("eq9", a, x)
    if x == 0.0:
        return IdentityReport.compare(ident, _zero(), _zero(), tol)
    lhs = zeta_power_series("inv", 0, a, x, 2, tol / 10.0, "eq9.series")
    rhs = _closed(log_gamma(a - x) - log_gamma(a) + digamma(a) * x, "log_gamma")
    return IdentityReport.compare(ident, lhs, rhs, tol)


# ---------------------------------------------------------------- harmonic-number series


def _harmonic_difference_series(b: float, x: float, tol: float, method: str) -> EvalResult:
    """sum_{n>=2} H_n [zeta(n, b) - x zeta(n+1, b)] x^n, the two parts summed separately."""
    first = zeta_power_series("harmonic", 0, b, x, 2, tol / 2.0, method)
    second = zeta_power_series("harmonic", 1, b, x, 2, tol / 2.0, method)
    return EvalResult(first.value - x * second.value, first.err_bound + abs(x) * second.err_bound,
                      first.terms_used + second.terms_used, method)


def thm2_lhs(a: float, x: float, tol: float = SERIES_TOL) -> EvalResult:
    _require_disk(x, a, "eq8")
    if x == 0.0:
        return _zero()
    return _harmonic_difference_series(a, x, tol, "eq8.series")


def thm2_check(a: float, x: float, tol: float = IDENTITY_TOL) -> IdentityReport:
    """sum_{n>=2} H_n [zeta(n,a) - x zeta(n+1,a)] x^n
    = zeta(2,a) x^2 + psi(a) x + ln Gamma(a-x) - ln Gamma(a)."""
    _require_disk(x, a, "eq8")
    ident = _point_id("eq8", a, x)
    lhs = thm2_lhs(a, x, tol / 10.0)
    if x == 0.0:
        return IdentityReport.compare(ident, lhs, _zero(), tol)
    rhs = _closed(hurwitz_zeta(2.0, a) * x * x + digamma(a) * x + log_gamma(a - x) - log_gamma(a),
                  "closed")
    return IdentityReport.compare(ident, lhs, rhs, tol)


def _integer_harmonic_series(offset: float, x: float, tol: float, method: str) -> EvalResult:
    """sum_{n>=2} H_n [(zeta(n) - 1 + offset) - x (zeta(n+1) - 1 + offset)] x^n for offset in {0, 1}.

    Uses the cancellation-free zeta(n) - 1 values; offset = 1 restores zeta(n) itself.
    """
    h = harmonic_table(_TABLE_SIZE)
    b = 1.0 if offset else 2.0
    y = x / b
    ax = abs(y)

    def coeff(n):
        if offset:
            c = (zeta_minus_one(n) + 1.0) - x * (zeta_minus_one(n + 1) + 1.0)
        else:
            c = _zm1_scaled(n) - y * _zm1_scaled(n + 1)
        return h[n] * c

    def majorant(n):
        return (1.0 + math.log(n)) * hurwitz_scaled_upper(n, b) * (1.0 + abs(x) / b)

    return power_series(coeff, majorant, lambda n: ax * (1.0 + 1.0 / (n + 1)), y, tol, method, 2)


def eq10_lhs(x: float, tol: float = SERIES_TOL) -> EvalResult:
    _require_disk(x, 1.0, "eq10")
    if x == 0.0:
        return _zero()
    return _integer_harmonic_series(1.0, x, tol, "eq10.series")


def eq10_check(x: float, tol: float = IDENTITY_TOL) -> IdentityReport:
    """sum_{n>=2} H_n [zeta(n) - x zeta(n+1)] x^n = zeta(2) x^2 - gamma x + ln Gamma(1 - x)."""
    _require_disk(x, 1.0, "eq10")
    ident = _point_id("eq10", None, x)
    lhs = eq10_lhs(x, tol / 10.0)
    if x == 0.0:
        return IdentityReport.compare(ident, lhs, _zero(), tol)
    reg = registry()
    rhs = _closed(reg.zeta2 * x * x - reg.gamma * x + log_gamma(1.0 - x), "closed")
    return IdentityReport.compare(ident, lhs, rhs, tol)


def eq11_lhs(x: float, tol: float = SERIES_TOL) -> EvalResult:
    _require_disk(x, 2.0, "eq11")
    if x == 0.0:
        return _zero()
    return _integer_harmonic_series(0.0, x, tol, "eq11.series")


def eq11_check(x: float, tol: float = IDENTITY_TOL) -> IdentityReport:
    """sum_{n>=2} H_n [(zeta(n)-1) - x (zeta(n+1)-1)] x^n
    = (zeta(2) - 1) x^2 + (1 - gamma) x + ln Gamma(2 - x)."""
    _require_disk(x, 2.0, "eq11")
    ident = _point_id("eq11", None, x)
    lhs = eq11_lhs(x, tol / 10.0)
    if x == 0.0:
        return IdentityReport.compare(ident, lhs, _zero(), tol)
    reg = registry()
    rhs = _closed((reg.zeta2 - 1.0) * x * x + (1.0 - reg.gamma) * x + log_gamma(2.0 - x), "closed")
    return IdentityReport.compare(ident, lhs, rhs, tol)


def eq12_check(tol: float = IDENTITY_TOL) -> IdentityReport:
    """The x = -1 instance of eq11, against zeta(2) + gamma - 2 + ln 2."""
    return fixed_identity(SeriesMethod.EQ12, tol)


def eq10_eq11_eq12_check(x: float, tol: float = IDENTITY_TOL
                         ) -> tuple[IdentityReport, IdentityReport, IdentityReport]:
    return eq10_check(x, tol), eq11_check(x, tol), eq12_check(tol)


def eq13_lhs(a: float, x: float, tol: float = SERIES_TOL) -> EvalResult:
    """sum H_n zeta(n, a+1) x^n - sum H_n zeta(n+1, a+1) x^(n+1), n >= 2.

    zeta(s, a+1) = zeta(s, a) - a^-s, so this is the regularized series, and it
    converges on the wider disk |x| < a + 1.
    """
    _require_disk(x, a + 1.0, "eq13")
    if x == 0.0:
        return _zero()
    return _harmonic_difference_series(a + 1.0, x, tol, "eq13.series")


def eq13_check(a: float, x: float, tol: float = IDENTITY_TOL) -> IdentityReport:
    """Regularized series = zeta(2,a) x^2 + psi(a) x + (a-x) x / a^2
    + ln Gamma(a+1-x) - ln Gamma(a+1)."""
    _require_disk(x, a + 1.0, "eq13")
    ident = _point_id("eq13", a, x)
    lhs = eq13_lhs(a, x, tol / 10.0)
    if x == 0.0:
        return IdentityReport.compare(ident, lhs, _zero(), tol)
    rhs = _closed(hurwitz_zeta(2.0, a) * x * x + digamma(a) * x + (a - x) * x / (a * a)
                  + log_gamma(a + 1.0 - x) - log_gamma(a + 1.0), "closed")
    return IdentityReport.compare(ident, lhs, rhs, tol)


# ---------------------------------------------------------------- three-route identities


@dataclass(frozen=True)
class Thm3Routes:
    series: EvalResult
    k_series: EvalResult | None
    k_series_skip: str | None
    integral: EvalResult


def _k_series(a: float, x: float, skew: bool, tol: float) -> tuple[EvalResult | None, str | None]:
    """sum_{k>=1} (-1)^(k-1) c_k zeta(k+1, b) x^k / k with b = a - x, c_k = 1 or 2^k - 1.

    The k = 0 term of each Hurwitz sum is summed in closed form (it is a log
    series); what is left has terms bounded by (w x/(b+1))^k, w = 1 or 2.
    """
    b = a - x
    w = 2.0 if skew else 1.0
    if w * x / b > 1.0:
        return None, (f"k-series diverges: weighted ratio {w * x / b:.4g} > 1 at b = a - x = {b:g}")
    q = w * x / (b + 1.0)
    if q > ROUTE2_MAX_RATIO:
        return None, (f"k-series remainder ratio {q:.4g} exceeds {ROUTE2_MAX_RATIO}; "
                      f"no usable tail bound")
    if skew:
        peel = (math.log1p(2.0 * x / b) - math.log1p(x / b)) / b
    else:
        peel = math.log1p(x / b) / b
    c = b + 1.0
    y = w * x / c

    def coeff(k):
        sign = 1.0 if k % 2 else -1.0
        cw = (1.0 - 2.0**-k) if skew else 1.0   # (2^k - 1) / 2^k
        return sign * cw * hurwitz_zeta_scaled(k + 1.0, c) / (c * k)

    def majorant(k):
        return hurwitz_scaled_upper(k + 1.0, c) / (c * k)

    rest = power_series(coeff, majorant, lambda k: q, y, tol, "thm3.k-series")
    return EvalResult(peel + rest.value, rest.err_bound + 4.0 * 2.0**-52 * abs(peel),
                      rest.terms_used + 1, "thm3.k-series"), None


def _thm3_integral(a: float, x: float, skew: bool, tol: float) -> EvalResult:
    b = a - x
    base = digamma(b)
    if skew:
        def f(t):
            return (digamma(b + 2.0 * t) - digamma(b + t)) / t
    else:
        def f(t):
            return (digamma(b + t) - base) / t
    g = Integrand(f, removable_points=((0.0, hurwitz_zeta(2.0, b)),))
    return integrate_finite(g, 0.0, x, max(1e-12, tol)).as_eval("thm3.integral")


def thm3_routes(a: float, x: float, skew: bool, tol: float = SERIES_TOL) -> Thm3Routes:
    if not 0.0 < x < a:
        raise DiskViolation(f"thm3 requires 0 < x < a, got a={a:g}, x={x:g}")
    kind = "skew" if skew else "harmonic"
    series = zeta_power_series(kind, 1, a, x, 1, tol, "thm3.series")
    k_series, why = _k_series(a, x, skew, tol)
    integral = _thm3_integral(a, x, skew, tol)
    return Thm3Routes(series, k_series, why, integral)


def thm3_triple_check(a: float, x: float, skew: bool, tol: float = IDENTITY_TOL) -> IdentityReport:
    """Compare the H_n (or skew) series, the k-series and the digamma integral.

    abs_diff is the largest pairwise difference among the routes evaluated; the
    report's lhs is the series route and rhs the integral route.
    """
    ident = _point_id("thm3.15" if skew else "thm3.14", a, x)
    routes = thm3_routes(a, x, skew, tol / 10.0)
    values = [routes.series, routes.integral]
    notes = []
    if routes.k_series is None:
        notes.append(f"route (ii) skipped: {routes.k_series_skip}")
    else:
        values.append(routes.k_series)
        notes.append(f"route (ii) = {routes.k_series.value!r}")
    diff = max(abs(p.value - q.value) for i, p in enumerate(values) for q in values[i + 1:])
    return IdentityReport(ident, routes.series, routes.integral, diff, tol,
                          PASS if diff <= tol else FAIL, tuple(notes))


# ---------------------------------------------------------------- registry and grids


@dataclass(frozen=True)
class GenfunIdentity:
    identity_id: str
    radius_rule: str
    check: Callable[..., IdentityReport]   # check(a, x, tol)
    positive_only: bool = False
    tolerance: float = IDENTITY_TOL


def _x_only(fn):
    return lambda a, x, tol: fn(x, tol)


GENFUN_IDENTITIES = {
    g.identity_id: g for g in (
        GenfunIdentity("eq1", R_TWO, _x_only(eq1_check)),
        GenfunIdentity("eq2", R_TWO, _x_only(eq2_check)),
        GenfunIdentity("eq5", R_ONE, _x_only(eq5_check)),
        GenfunIdentity("eq8", R_A, thm2_check),
        GenfunIdentity("eq9", R_A, eq9_check),
        GenfunIdentity("eq10", R_ONE, _x_only(eq10_check)),
        GenfunIdentity("eq11", R_TWO, _x_only(eq11_check)),
        GenfunIdentity("eq13", R_A1, eq13_check),
        GenfunIdentity("eq18", R_A, eq18_check),
        GenfunIdentity("thm3.14", R_A, lambda a, x, tol: thm3_triple_check(a, x, False, tol),
                       positive_only=True),
        GenfunIdentity("thm3.15", R_A, lambda a, x, tol: thm3_triple_check(a, x, True, tol),
                       positive_only=True),
    )
}

GRID_IDS = ("eq1", "eq2", "eq5", "eq8", "eq9", "eq10", "eq11", "eq13", "thm3.14", "thm3.15")


def lookup(identity_id: str) -> GenfunIdentity:
    key = identity_id.split("@", 1)[0]
    try:
        return GENFUN_IDENTITIES[key]
    except KeyError:
        raise DomainError(f"unknown generating-function identity {identity_id!r}; "
                          f"known: {', '.join(sorted(GENFUN_IDENTITIES))}") from None


def _guardrail(identity: GenfunIdentity, a: float | None, x: float) -> str | None:
    """Reason to skip the point, or None; closed forms need positive gamma arguments."""
    if identity.positive_only and not x > 0.0:
        return "needs 0 < x (integral over [0, x])"
    rule = identity.radius_rule
    if rule == R_ONE and not 1.0 - x > 0.0:
        return "gamma argument 1 - x is not positive"
    if rule == R_TWO and not 2.0 - x > 0.0:
        return "gamma argument 2 - x is not positive"
    if rule == R_A and not a - x > 0.0:
        return "gamma argument a - x is not positive"
    if rule == R_A1 and not a + 1.0 - x > 0.0:
        return "gamma argument a + 1 - x is not positive"
    return None


def run_grid(identity_id: str, grid: GridSpec | None = None,
             tol: float | None = None) -> GenfunReport:
    """Run one identity over a grid; out-of-disk and guardrail points are skipped, not failed.

    Tail-bound and quadrature failures are not skipped: they propagate, since
    they mean the requested tolerance cannot be certified.
    """
    ident = lookup(identity_id)
    if grid is None:
        fractions = [f for f in DEFAULT_FRACTIONS if f > 0.0] if ident.positive_only \
            else DEFAULT_FRACTIONS
        grid = GridSpec(DEFAULT_A, fractions, ident.radius_rule)
    elif grid.radius_rule != ident.radius_rule:
        grid = GridSpec(grid.a_values, grid.x_fractions, ident.radius_rule)
    tol = ident.tolerance if tol is None else tol
    evaluated, skipped = [], []
    for a, x in grid.points():
        reason = _guardrail(ident, a, x)
        if reason is None:
            try:
                rep = ident.check(a, x, tol)
            except DiskViolation as exc:
                reason = str(exc)
            except DomainError as exc:
                reason = f"{type(exc).__name__}: {exc}"
            else:
                evaluated.append((a, x, rep))
                for note in rep.notes:
                    if note.startswith("route (ii) skipped"):
                        skipped.append((a, x, note))
                continue
        skipped.append((a, x, reason))
    return GenfunReport.aggregate(ident.identity_id, tol, evaluated, skipped)


def default_grid_reports(tol: float | None = None) -> list[GenfunReport]:
    return [run_grid(i, None, tol) for i in GRID_IDS]
