"""Acceptance criteria, each checked at its stated tolerance.

Every test prints a single ``CRITERION n: PASS|FAIL`` line; the lines are
repeated in pytest's terminal summary.
"""

import itertools
import math
import random

import mpmath as mp

from harmzeta.constants import registry
from harmzeta.genfun import (DEFAULT_A, GRID_IDS, default_grid_reports, thm3_routes)
from harmzeta.numerics import zeta_prime
from harmzeta.quadrature import (doubled_difference_integral, ein_integral_h, log_integral_i,
                                 m1_integral, m_integral, tanh_sinh_levels)
from harmzeta.series import (FIXED_IDENTITIES, M1_METHODS, M_METHODS, fixed_identity, m1_series,
                             m_series, prop2_check, s_n, s_n_naive)
from harmzeta.suites import RunConfig, suite_bounds, zeta_prime_fd
from harmzeta.transforms import (FiniteSequence, abel_transform_check, euler_transform_coeffs,
                                 laguerre_binomial_check, rational_case, zeta_case)

TOL = 1e-9


def _spread(values):
    return max(values) - min(values)


# 1 -------------------------------------------------------------------------------------------


def test_criterion_1_m_routes(acceptance):
    values = {m.value: m_series(m, TOL).value for m in M_METHODS}
    values["m.integral"] = m_integral(TOL / 10).value
    values["thm1.h"] = ein_integral_h(TOL / 10).value
    values["thm1.i"] = log_integral_i(TOL / 10).value
    assert len(values) == 11
    worst_route, worst = max(((k, abs(v - 1.257746)) for k, v in values.items()),
                             key=lambda kv: kv[1])
    spread = _spread(list(values.values()))
    ok = worst <= 5e-7 and spread <= 2e-9
    acceptance(1, ok, f"{len(values)} routes, max |value - 1.257746| = {worst:.3e} ({worst_route}, "
                      f"limit 5e-7), spread = {spread:.2e} (limit 2e-9)")
    assert worst <= 5e-7, "every route gives 1.2577468869..., the published 1.257746 is truncated"
    assert spread <= 2e-9


# 2 -------------------------------------------------------------------------------------------


def test_criterion_2_m1_routes(acceptance):
    values = {m.value: m1_series(m, TOL).value for m in M1_METHODS}
    values["m1.integral"] = m1_integral(TOL / 10).value
    values["eq21.doubled-integral"] = doubled_difference_integral(TOL / 10).value
    for key in ("prop3.k", "prop3.l", "prop3.m"):
        assert key in values
    worst = max(abs(v - 0.86062) for v in values.values())
    spread = _spread(list(values.values()))
    ok = worst <= 5e-6 and spread <= 2e-9
    acceptance(2, ok, f"{len(values)} routes, max |value - 0.86062| = {worst:.3e} (limit 5e-6), "
                      f"spread = {spread:.2e} (limit 2e-9)")
    assert ok


# 3 -------------------------------------------------------------------------------------------


def test_criterion_3_closed_forms(acceptance):
    reg = registry()
    expected = {
        "goldbach": 1.0,
        "eq3": 1.0 - reg.gamma,
        "eq4": reg.gamma,
        "eq6": reg.zeta2 - reg.gamma - reg.ln2,
        "eq7": reg.zeta2 - reg.gamma,
        "eq12": reg.zeta2 + reg.gamma - 2.0 + reg.ln2,
    }
    reports = {m.value: fixed_identity(m, TOL) for m in FIXED_IDENTITIES}
    worst = 0.0
    ok = True
    for ident, rhs in expected.items():
        rep = reports[ident]
        ok &= rep.rhs.value == rhs and rep.abs_diff <= 1e-8
        worst = max(worst, rep.abs_diff)
    drift = registry().cross_check()
    ok &= max(drift.values()) <= 1e-12
    acceptance(3, ok, f"{len(expected)} identities, max |LHS - RHS| = {worst:.2e} (limit 1e-8); "
                      f"constants drift {max(drift.values()):.1e} (limit 1e-12)")
    assert ok


# 4 -------------------------------------------------------------------------------------------


def test_criterion_4_bounds(acceptance):
    reports, _ = suite_bounds(RunConfig(suites=["bounds"]))
    lemma1 = [r for r in reports if r.identity_id.startswith("lemma1@")]
    remark2 = [r for r in reports if r.identity_id.startswith("remark2@")]
    appendix = [r for r in reports if r.identity_id.startswith("appendix@")]
    violations = [r.identity_id for r in reports if not r.passed]
    ok = len(lemma1) == 59 and len(remark2) == 59 and appendix and not violations
    acceptance(4, ok, f"{len(reports)} bound checks (lemma1 n=2..60, remark2 n=2..60, "
                      f"{len(appendix)} appendix points), {len(violations)} violations")
    assert ok, violations


# 5 -------------------------------------------------------------------------------------------


def test_criterion_5_genfun_grids(acceptance):
    reports = default_grid_reports(TOL)
    failing = [r.identity_id for r in reports if not r.passed]
    worst = max(r.max_abs_diff for r in reports)
    eq13 = next(r for r in reports if r.identity_id == "eq13")
    extended = 0
    for a in DEFAULT_A:
        for rep in eq13.points:
            ax = rep.identity_id.split("@", 1)[1]
            pa, px = (float(t.split("=")[1]) for t in ax.split(","))
            if pa == a and a < abs(px) < a + 1:
                extended += 1
    reg = registry()
    plain = thm3_routes(2.0, 1.0, False, TOL / 10)
    skew = thm3_routes(2.0, 1.0, True, TOL / 10)
    plain_vals = [r.value for r in (plain.series, plain.k_series, plain.integral) if r is not None]
    skew_vals = [r.value for r in (skew.series, skew.k_series, skew.integral) if r is not None]
    thm3_err = max(max(abs(v - reg.m_reference) for v in plain_vals),
                   max(abs(v - reg.m1_reference) for v in skew_vals))
    ok = (not failing and [r.identity_id for r in reports] == list(GRID_IDS)
          and extended >= 2 and thm3_err <= TOL)
    acceptance(5, ok, f"{len(reports)} grids, {sum(len(r.points) for r in reports)} points, "
                      f"max diff {worst:.2e} (limit 1e-9), {extended} eq13 points with a < |x| < a+1, "
                      f"thm3 at (2, 1) within {thm3_err:.1e} of M and M1")
    assert ok, failing


# 6 -------------------------------------------------------------------------------------------


def test_criterion_6_transforms(acceptance):
    rng = random.Random(RunConfig().seed)
    abel = []
    for _ in range(100):
        n = rng.randint(2, 50)
        a = FiniteSequence(1, [rng.uniform(-10, 10) for _ in range(n)])
        b = FiniteSequence(1, [rng.uniform(-10, 10) for _ in range(n)])
        abel.append(abel_transform_check(a, b))
    abel_ok = all(r.passed for r in abel)

    lin_ok = True
    for _ in range(5):
        n = rng.randint(1, 40)
        xs = [rng.uniform(-1, 1) for _ in range(n + 1)]
        ys = [rng.uniform(-1, 1) for _ in range(n + 1)]
        al, be = rng.uniform(-2, 2), rng.uniform(-2, 2)
        combo = euler_transform_coeffs(lambda k: al * xs[k] + be * ys[k], n)
        split = al * euler_transform_coeffs(xs.__getitem__, n) + be * euler_transform_coeffs(ys.__getitem__, n)
        mag = euler_transform_coeffs(lambda k: abs(al * xs[k]) + abs(be * ys[k]), n)
        lin_ok &= abs(combo - split) <= 1e-12 * max(1.0, mag)

    lemma3 = [rational_case(x, skew) for x in (0.1, 0.2, 0.3) for skew in (False, True)]
    lemma3 += [zeta_case(2.0, x, skew) for x in (0.25, 0.5, 0.6) for skew in (False, True)]
    lemma3_ok = all(r.passed for r in lemma3)

    laguerre = [laguerre_binomial_check(n, 1e-8) for n in range(1, 13)]
    lag_ok = all(r.abs_diff <= 1e-8 for r in laguerre)
    ok = abel_ok and lin_ok and lemma3_ok and lag_ok
    acceptance(6, ok, f"abel 100 seeded sequences {'ok' if abel_ok else 'FAILED'}, euler linearity "
                      f"{'ok' if lin_ok else 'FAILED'}, lemma3 {len(lemma3)} checks "
                      f"max diff {max(r.abs_diff for r in lemma3):.1e}, laguerre n=1..12 max diff "
                      f"{max(r.abs_diff for r in laguerre):.1e}")
    assert ok


# 7 -------------------------------------------------------------------------------------------


def test_criterion_7_prop2(acceptance):
    reps = [prop2_check(p, 1e-8) for p in (2.0, 3.0)]
    fd = [abs(zeta_prime(p) - zeta_prime_fd(p)) for p in (2.0, 3.0)]
    ok = all(r.abs_diff <= 1e-8 for r in reps) and max(fd) <= 1e-8
    acceptance(7, ok, f"|LHS - RHS| = {reps[0].abs_diff:.1e} (p=2), {reps[1].abs_diff:.1e} (p=3); "
                      f"zeta' vs finite difference {max(fd):.1e} (limit 1e-8)")
    assert ok


# 8 -------------------------------------------------------------------------------------------


def test_criterion_8_cancellation_guard(acceptance):
    mp.mp.dps = 30
    exact = mp.nsum(lambda k: 1 / (k**50 * (k - 1)), [2, mp.inf])
    direct = s_n(50)
    naive = s_n_naive(50)
    rel = abs(direct - float(exact)) / float(exact)
    naive_rel = abs(naive - float(exact)) / float(exact)
    ok = rel <= 1e-12 and naive_rel > 1.0
    acceptance(8, ok, f"s_50 relative error {rel:.1e} (limit 1e-12); naive formula gives {naive:.3e} "
                      f"vs {float(exact):.6e} (relative error {naive_rel:.1e})")
    assert rel <= 1e-12
    assert naive_rel > 1.0, "the naive formula should be visibly wrong at n = 50"


# 9 -------------------------------------------------------------------------------------------


def test_criterion_9_quadrature_order(acceptance):
    cases = [("1", lambda t: 1.0, 1.0),
             ("ln(1/t)", lambda t: -math.log(t), 1.0),
             ("t ln t", lambda t: t * math.log(t), -0.25)]
    noise = 1e-14
    ok = True
    detail = []
    for name, f, exact in cases:
        errs = [abs(v - exact) for _, v, _ in tanh_sinh_levels(f, 0.0, 1.0, 6)]
        ratios = []
        for prev, nxt in itertools.pairwise(errs):
            if prev <= noise:
                break
            ratios.append(prev / nxt if nxt else math.inf)
            ok &= nxt <= max(prev / 10.0, noise)
        detail.append(f"{name}: min gain {min(ratios):.0e}" if ratios else f"{name}: exact")
    acceptance(9, ok, "; ".join(detail))
    assert ok
