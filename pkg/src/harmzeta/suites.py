"""Named verification suites and the route table behind ``compute``.

A suite is a function ``(config) -> (results, skipped)``; every check it runs
is an :class:`IdentityReport`, so inequality checks are expressed with a zero
tolerance and an ``abs_diff`` equal to the size of the violation.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from typing import Callable

from .constants import registry
from .errors import DomainError
from .genfun import GRID_IDS, run_grid, thm3_routes
from .numerics import (EvalResult, digamma, ein, harmonic, hurwitz_excess_bounds, hurwitz_zeta,
                       lemma1_bounds, log_gamma, riemann_zeta, skew_harmonic, zeta_minus_one,
                       zeta_prime)
from .quadrature import (MIN_TOL, Integrand, digamma_ratio_integral, doubled_difference_integral,
                         ein_integral_h, eq21_check, integrate_finite, log_integral_i, m1_integral,
                         m_integral, remark1_integral)
from .report import FAIL, PASS, IdentityReport, SuiteReport
from .series import (FIXED_IDENTITIES, M1_METHODS, M_METHODS, SeriesMethod, fixed_identity,
                     m1_series, m_series, prop1_partial_sum_check, prop2_check, remark1_lhs,
                     s_n, s_n_naive, series_e_raw)
from .transforms import (FiniteSequence, abel_transform_check, euler_transform_coeffs,
                         harmonic_rep_check, laguerre_binomial_check, rational_case,
                         skew_rep_check, zeta_case)

SUITES = ("core", "m-routes", "identities", "bounds", "genfun", "transforms")
DEFAULT_SEED = 20240611
ABEL_SEQUENCES = 100


@dataclass
class RunConfig:
    tolerance: float = 1e-9
    max_terms: int = 100_000
    suites: list[str] = field(default_factory=lambda: ["all"])
    output_path: str | None = None
    output_format: str = "text"
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if not self.tolerance >= MIN_TOL:
            raise DomainError(f"tolerance must be >= {MIN_TOL:g}, got {self.tolerance!r}")
        if int(self.max_terms) != self.max_terms or self.max_terms < 100:
            raise DomainError(f"max_terms must be an integer >= 100, got {self.max_terms!r}")
        self.max_terms = int(self.max_terms)
        if self.output_format not in ("json", "csv", "text"):
            raise DomainError(f"unknown output format {self.output_format!r}")
        unknown = [s for s in self.suites if s not in SUITES + ("all",)]
        if unknown:
            raise DomainError(f"unknown suite(s) {unknown}; choose from {', '.join(SUITES + ('all',))}")

    def expanded_suites(self) -> list[str]:
        return list(SUITES) if "all" in self.suites else [s for s in SUITES if s in self.suites]

    def echo(self) -> dict:
        return {"tolerance": self.tolerance, "max_terms": self.max_terms,
                "suites": self.expanded_suites(), "seed": self.seed}


# ---------------------------------------------------------------- routes to M and M1


def _quad_tol(tol: float) -> float:
    return max(MIN_TOL, tol / 10.0)


def _m_routes() -> dict[str, Callable[[float, int], EvalResult]]:
    routes = {m.value: (lambda tol, n, m=m: m_series(m, tol, n)) for m in M_METHODS}
    routes["thm1.h"] = lambda tol, n: ein_integral_h(_quad_tol(tol)).as_eval("thm1.h")
    routes["thm1.i"] = lambda tol, n: log_integral_i(_quad_tol(tol)).as_eval("thm1.i")
    routes["m.integral"] = lambda tol, n: m_integral(_quad_tol(tol)).as_eval("m.integral")
    return routes


def _m1_routes() -> dict[str, Callable[[float, int], EvalResult]]:
    routes = {m.value: (lambda tol, n, m=m: m1_series(m, tol, n)) for m in M1_METHODS}
    routes["m1.integral"] = lambda tol, n: m1_integral(_quad_tol(tol)).as_eval("m1.integral")
    routes["eq21"] = lambda tol, n: doubled_difference_integral(_quad_tol(tol)).as_eval("eq21")
    return routes


ROUTES = {"M": _m_routes(), "M1": _m1_routes()}


def reference(constant: str) -> float:
    reg = registry()
    return {"M": reg.m_reference, "M1": reg.m1_reference}[constant]


def compute(constant: str, method: str = "all", tol: float = 1e-9,
            max_terms: int = 100_000) -> list[EvalResult]:
    """Evaluate ``constant`` ("M" or "M1") by one route or by all of them."""
    if constant not in ROUTES:
        raise DomainError(f"unknown constant {constant!r}; choose M or M1")
    table = ROUTES[constant]
    if method == "all":
        keys = list(table)
    else:
        key = method
        if key not in table:
            try:
                key = SeriesMethod.parse(method).value
            except DomainError:
                pass
        if key not in table:
            raise DomainError(f"unknown method {method!r} for {constant}; "
                              f"known: {', '.join(table)}")
        keys = [key]
    return [table[k](tol, max_terms) for k in keys]


# ---------------------------------------------------------------- helpers


def _value(x: float, method: str) -> EvalResult:
    return EvalResult(x, 0.0, 0, method)


def _compare(ident: str, lhs: float, rhs: float, tol: float, notes=()) -> IdentityReport:
    return IdentityReport.compare(ident, _value(lhs, "computed"), _value(rhs, "reference"), tol,
                                  notes)


def bound_report(ident: str, value: float, lo: float, hi: float, strict_hi: bool = True
                 ) -> IdentityReport:
    """lo < value < hi (or <= hi); abs_diff is the size of any violation, tolerance 0."""
    ok = lo < value and (value < hi if strict_hi else value <= hi)
    if ok:
        diff = 0.0
    else:
        diff = max(lo - value, value - hi, math.ulp(0.0))
    nearest = lo if value - lo < hi - value else hi
    note = f"bounds ({lo!r}, {hi!r}{')' if strict_hi else ']'}"
    return IdentityReport(ident, _value(value, "computed"), _value(nearest, "bound"), diff, 0.0,
                          PASS if ok else FAIL, (note,))


def _spread(ident: str, values: list[EvalResult], tol: float) -> IdentityReport:
    vals = [v.value for v in values]
    hi, lo = max(vals), min(vals)
    return IdentityReport(ident, _value(hi, "max"), _value(lo, "min"), hi - lo, tol,
                          PASS if hi - lo <= tol else FAIL, tuple(v.method for v in values))


def zeta_prime_fd(p: float, h: float = 1e-3) -> float:
    """Fourth-order central difference of riemann_zeta; an oracle independent of zeta_prime."""
    f = riemann_zeta
    return (8.0 * (f(p + h) - f(p - h)) - (f(p + 2 * h) - f(p - 2 * h))) / (12.0 * h)


# ---------------------------------------------------------------- suites


def suite_core(cfg: RunConfig):
    reg = registry()
    out = [
        _compare("core.gamma", -digamma(1.0), reg.gamma, 1e-12),
        _compare("core.ln2", log_gamma(3.0), reg.ln2, 1e-12),
        _compare("core.zeta2", hurwitz_zeta(2.0, 1.0), reg.zeta2, 1e-12),
    ]
    for x in (0.1, 1.0, 2.5, 50.0):
        out.append(_compare(f"core.digamma.recurrence@x={x:g}", digamma(x + 1.0),
                            digamma(x) + 1.0 / x, 1e-12))
        out.append(_compare(f"core.log_gamma.recurrence@x={x:g}", log_gamma(x + 1.0),
                            log_gamma(x) + math.log(x), 1e-12))
    h = 1e-5
    for x in (0.5, 1.5, 3.0, 10.0):
        fd = (log_gamma(x + h) - log_gamma(x - h)) / (2.0 * h)
        out.append(_compare(f"core.log_gamma.derivative@x={x:g}", fd, digamma(x), 1e-6))
    for s in (1.5, 2.0, 3.0, 5.0, 10.0):
        for a in (0.5, 1.0, 2.0, 10.0):
            out.append(_compare(f"core.hurwitz.recurrence@s={s:g},a={a:g}", hurwitz_zeta(s, a),
                                a**-s + hurwitz_zeta(s, a + 1.0), 1e-12))
    for n in (1, 10, 1000):
        out.append(_compare(f"core.harmonic@n={n}", harmonic(n), digamma(n + 1.0) + reg.gamma,
                            1e-12))
    for n in range(2, 11):
        out.append(_compare(f"core.zeta_minus_one@n={n}", zeta_minus_one(n),
                            hurwitz_zeta(float(n), 2.0), 1e-15))
    for x in (0.5, 1.0, 10.0, 40.0):
        q = integrate_finite(Integrand(lambda t: -math.expm1(-t) / t, removable_points=((0.0, 1.0),)),
                             0.0, x, 1e-12)
        out.append(_compare(f"core.ein.integral@x={x:g}", ein(x), q.value, 1e-11))
    for p in (2.0, 3.0):
        out.append(_compare(f"core.zeta_prime.fd@p={p:g}", zeta_prime(p), zeta_prime_fd(p), 1e-8))
    for n in (2, 5, 10, 20):
        out.append(_compare(f"core.s_n.naive@n={n}", s_n(n), s_n_naive(n), 1e-8))
    return out, []


def suite_m_routes(cfg: RunConfig):
    tol, cap = cfg.tolerance, cfg.max_terms
    out = []
    for constant, label in (("M", "m"), ("M1", "m1")):
        ref = reference(constant)
        vals = []
        for key, fn in ROUTES[constant].items():
            res = fn(tol, cap)
            vals.append(res)
            out.append(IdentityReport.compare(f"{label}.route:{key}", res, _value(ref, "registry"),
                                              2.0 * tol))
        out.append(_spread(f"{label}.spread", vals, 2.0 * tol))
    reg = registry()
    raw = series_e_raw(tol)
    d = m_series(SeriesMethod.D, tol, cap)
    out.append(_compare("thm1.e-vs-d", raw.value, d.value + 1.0 - reg.gamma, 2.0 * tol))
    qt = _quad_tol(tol)
    whole = digamma_ratio_integral(0.0, 2.0, qt).value
    out.append(_compare("m.integral.additivity", whole,
                        m_integral(qt).value + m1_integral(qt).value, 1e-10))
    return out, []


def suite_identities(cfg: RunConfig):
    tol = cfg.tolerance
    out = [fixed_identity(m, tol) for m in FIXED_IDENTITIES]
    out += [prop1_partial_sum_check(m) for m in (2, 10, 50)]
    out += [prop2_check(2.0), prop2_check(3.0), prop2_check(20.0, 1e-10)]
    out.append(eq21_check(tol))
    out.append(IdentityReport.compare("remark1.integral",
                                      remark1_integral(_quad_tol(tol)).as_eval("remark1.integral"),
                                      remark1_lhs(tol / 10.0), tol))
    return out, []


def suite_bounds(cfg: RunConfig):
    out = []
    for n in range(2, 61):
        lo, hi = lemma1_bounds(n)
        out.append(bound_report(f"lemma1@n={n:02d}", zeta_minus_one(n), lo, hi))
        out.append(bound_report(f"remark2@n={n:02d}", s_n(n), lo, hi))
        h = harmonic(n)
        term = h * zeta_minus_one(n + 1)
        out.append(bound_report(f"thm1.d.term@n={n:02d}", term, 0.0,
                                (1.0 + math.log(n)) * 2.0 ** -(n + 1) * (n + 2) / n))
        out.append(bound_report(f"skew.le.harmonic@n={n:02d}", abs(skew_harmonic(n)), -1.0, h,
                                strict_hi=False))
    for s in (1.5, 2.0, 3.0, 5.0, 10.0):
        for a in (0.5, 1.0, 2.0, 10.0):
            lo, hi = hurwitz_excess_bounds(s, a)
            out.append(bound_report(f"appendix@s={s:g},a={a:g}", hurwitz_zeta(s, a) - a**-s,
                                    lo, hi, strict_hi=False))
    return out, []


def suite_genfun(cfg: RunConfig):
    out, skipped = [], []
    for ident in GRID_IDS:
        rep = run_grid(ident, None, cfg.tolerance)
        out.extend(rep.points)
        for a, x, why in rep.skipped:
            key = f"{ident}@x={x:g}" if a is None else f"{ident}@a={a:g},x={x:g}"
            skipped.append((key, why))
    ref = registry()
    for skew, label, target in ((False, "thm3.14@a=2,x=1:M", ref.m_reference),
                                (True, "thm3.15@a=2,x=1:M1", ref.m1_reference)):
        routes = thm3_routes(2.0, 1.0, skew, cfg.tolerance / 10.0)
        out.append(IdentityReport.compare(label, routes.series, _value(target, "registry"),
                                          cfg.tolerance))
    return out, skipped


def suite_transforms(cfg: RunConfig):
    rng = random.Random(cfg.seed)
    out = []
    for i in range(ABEL_SEQUENCES):
        length = rng.randint(2, 50)
        start = rng.randint(0, 5)
        scale = 10.0 ** rng.uniform(-3, 3)
        a = FiniteSequence(start, [rng.uniform(-1, 1) * scale for _ in range(length)])
        b = FiniteSequence(start, [rng.uniform(-1, 1) for _ in range(length)])
        out.append(abel_transform_check(a, b, identity_id=f"lemma2.random@seq={i:03d}"))
    for i in range(5):
        n = rng.randint(1, 50)
        al, be = rng.uniform(-2, 2), rng.uniform(-2, 2)
        xs = [rng.uniform(-1, 1) for _ in range(n + 1)]
        ys = [rng.uniform(-1, 1) for _ in range(n + 1)]
        combo = euler_transform_coeffs(lambda k: al * xs[k] + be * ys[k], n)
        split = al * euler_transform_coeffs(xs.__getitem__, n) + be * euler_transform_coeffs(ys.__getitem__, n)
        mag = euler_transform_coeffs(lambda k: abs(al * xs[k]) + abs(be * ys[k]), n)
        out.append(_compare(f"euler.linearity@{i}", combo, split, 1e-12 * max(1.0, mag)))
    for n in (1, 10, 40):
        out.append(_compare(f"thm1.j.inner:ones@n={n}",
                            euler_transform_coeffs(lambda k: 1.0 if k else 0.0, n), 2.0**n - 1.0,
                            0.0))
        out.append(_compare(f"thm1.j.inner:k@n={n}", euler_transform_coeffs(float, n),
                            n * 2.0 ** (n - 1), 0.0))
    for skew in (False, True):
        for x in (0.1, 0.2, 0.3):
            out.append(rational_case(x, skew))
        for x in (0.25, 0.5, 0.6):
            out.append(zeta_case(2.0, x, skew))
    out += [laguerre_binomial_check(n) for n in range(1, 13)]
    for n in (1, 5, 50):
        out.append(harmonic_rep_check(n))
        out.append(skew_rep_check(n))
    return out, []


SUITE_FUNCS = {
    "core": suite_core,
    "m-routes": suite_m_routes,
    "identities": suite_identities,
    "bounds": suite_bounds,
    "genfun": suite_genfun,
    "transforms": suite_transforms,
}


def run_suites(cfg: RunConfig) -> SuiteReport:
    t0 = time.perf_counter()
    results, skipped = [], []
    names = cfg.expanded_suites()
    for name in names:
        res, sk = SUITE_FUNCS[name](cfg)
        results.extend(res)
        skipped.extend(sk)
    label = "all" if "all" in cfg.suites else ",".join(names)
    wall = int(round((time.perf_counter() - t0) * 1000))
    return SuiteReport(label, results, cfg.echo(), wall, skipped)
