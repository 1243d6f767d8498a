import itertools
import math

import mpmath as mp
import pytest

from harmzeta.constants import registry
from harmzeta.errors import DomainError
from harmzeta.series import (
    FIXED_IDENTITIES,
    FORMULAS,
    M1_METHODS,
    M_METHODS,
    SeriesMethod,
    fixed_identity,
    m1_series,
    m_series,
    prop1_partial_sum_check,
    prop2_check,
    remark1_lhs,
    s_n,
    s_n_eval,
    s_n_naive,
    series_e_raw,
    sum_with_tail,
)
from harmzeta.numerics import harmonic, lemma1_bounds, skew_harmonic, zeta_minus_one

mp.mp.dps = 40
TOL = 1e-9


@pytest.fixture(scope="module")
def m_values():
    return {m: m_series(m, TOL) for m in M_METHODS}


@pytest.fixture(scope="module")
def m1_values():
    return {m: m1_series(m, TOL) for m in M1_METHODS}


def test_every_route_reaches_m(m_values):
    ref = registry().m_reference
    for m, res in m_values.items():
        # the six-digit value 1.257746 is truncated, not rounded
        assert 0 <= res.value - 1.257746 < 1e-6, m
        # the certified bound must cover the true error
        assert abs(res.value - ref) <= res.err_bound + 1e-15, m
        assert res.err_bound <= TOL


def test_m_routes_pairwise_spread(m_values):
    for (p, a), (q, b) in itertools.combinations(m_values.items(), 2):
        assert abs(a.value - b.value) <= 2 * TOL, (p, q)


def test_every_route_reaches_m1(m1_values):
    ref = registry().m1_reference
    for m, res in m1_values.items():
        assert 0 <= res.value - 0.86062 < 1e-5
        assert abs(res.value - ref) <= res.err_bound + 1e-15, m
    for a, b in itertools.combinations(m1_values.values(), 2):
        assert abs(a.value - b.value) <= 2 * TOL


def test_route_g_raw_value_is_m_minus_ln2(m_values):
    raw = m_values[SeriesMethod.G].value - registry().ln2
    assert 0 <= raw - 0.564599 < 1e-6


def test_route_e_offset(m_values):
    reg = registry()
    raw = series_e_raw(TOL).value
    assert abs(raw - (m_values[SeriesMethod.D].value + 1 - reg.gamma)) <= 2e-9


def test_m_series_rejects_bad_inputs():
    with pytest.raises(DomainError):
        m_series(SeriesMethod.A, 1e-13)
    with pytest.raises(DomainError):
        m_series(SeriesMethod.K)
    with pytest.raises(DomainError):
        m1_series(SeriesMethod.A)
    with pytest.raises(DomainError):
        SeriesMethod.parse("thm1.z")


def test_method_parsing_accepts_ids_and_names():
    assert SeriesMethod.parse("thm1.a") is SeriesMethod.A
    assert SeriesMethod.parse("M_") is SeriesMethod.M_
    assert SeriesMethod.parse("M") is SeriesMethod.M_
    assert SeriesMethod.parse("prop3.m") is SeriesMethod.M_


def test_every_method_has_a_formula():
    for m in SeriesMethod:
        assert m.value in FORMULAS


def test_slow_series_tail_correction_is_needed():
    # without the Euler-Maclaurin tail, 1e5 terms of (b) are off by ~1e-5
    direct = math.fsum(math.log1p(1.0 / n) / n for n in range(1, 100_001))
    assert abs(direct - registry().m_reference) > 1e-6
    assert abs(m_series(SeriesMethod.B).value - registry().m_reference) <= 1e-12


def test_tolerance_unreachable_when_terms_are_capped():
    from harmzeta.errors import ToleranceUnreachable
    with pytest.raises(ToleranceUnreachable) as info:
        sum_with_tail(lambda n: 1.0 / n**2, lambda n: 1.0 / n, 1e-9, 1, "p-series", 100)
    assert info.value.best is not None


# -- S_n ------------------------------------------------------------------------------


def test_s_n_examples():
    assert s_n(1) == 1.0
    assert abs(s_n(2) - (2 - registry().zeta2)) <= 1e-16
    assert abs(s_n(2) - 0.35506593315177356) <= 1e-16


@pytest.mark.parametrize("n", range(2, 61))
def test_s_n_bounds(n):
    lo, hi = lemma1_bounds(n)
    assert lo < s_n(n) < hi


@pytest.mark.parametrize("n", [2, 3, 5, 10, 20])
def test_s_n_agrees_with_naive_form_at_small_n(n):
    assert abs(s_n(n) - s_n_naive(n)) <= 1e-8


@pytest.mark.parametrize("n", [2, 7, 30, 50, 80])
def test_s_n_against_brute_force(n):
    exact = mp.nsum(lambda k: 1 / (k**n * (k - 1)), [2, mp.inf])
    res = s_n_eval(n)
    assert abs(res.value - float(exact)) <= 1e-14 * float(exact)
    assert abs(res.value - float(exact)) <= res.err_bound


def test_s_n_domain():
    with pytest.raises(DomainError):
        s_n(0)


# -- fixed identities -----------------------------------------------------------------


@pytest.mark.parametrize("ident", FIXED_IDENTITIES, ids=lambda m: m.value)
def test_fixed_identities(ident):
    rep = fixed_identity(ident, TOL)
    assert rep.passed, rep
    assert rep.abs_diff <= 1e-8


def test_fixed_identity_right_sides():
    reg = registry()
    assert abs(fixed_identity(SeriesMethod.FURDUI7).rhs.value - 1.06771840194669354) <= 1e-15
    assert abs(fixed_identity(SeriesMethod.EQ12).rhs.value - 0.91529691230970461) <= 1e-15
    assert fixed_identity(SeriesMethod.GOLDBACH).rhs.value == 1.0
    assert fixed_identity(SeriesMethod.EULER4).rhs.value == reg.gamma


def test_remark1_lhs_against_mpmath():
    exact = mp.nsum(lambda k: (mp.zeta(k + 1) - 1) / k, [1, mp.inf])
    assert abs(remark1_lhs(1e-12).value - float(exact)) <= 1e-12


def test_m1_route_m_first_term_is_one():
    assert s_n(1) / 1 == 1.0


# -- telescoped partial sums and the ln(n+1)/n^p identity --------------------------------


def test_prop1_partial_sum_m2():
    rep = prop1_partial_sum_check(2)
    expected = 0.5 * (1 + zeta_minus_one(2) - 1 - zeta_minus_one(3))
    assert abs(rep.lhs.value - expected) <= 1e-16
    # 0.5 * (1.6449340668 - 1.2020569032) = 0.2214385818
    assert abs(rep.lhs.value - 0.22143858184431608) <= 1e-15
    assert rep.passed


@pytest.mark.parametrize("m", [10, 50])
def test_prop1_partial_sums(m):
    assert prop1_partial_sum_check(m).abs_diff <= 1e-10


def test_prop1_partial_sums_approach_eq6():
    reg = registry()
    target = reg.zeta2 - reg.gamma - reg.ln2
    assert abs(target - 0.37457122138674827) <= 1e-15
    lhs = prop1_partial_sum_check(60).lhs.value
    tail = 2 * lemma1_bounds(61)[1]
    assert abs(lhs - target) <= tail + 4e-16


@pytest.mark.parametrize("p", [2.0, 3.0])
def test_prop2(p):
    rep = prop2_check(p)
    assert rep.abs_diff <= 1e-8
    # plain nsum extrapolation is off by ~4e-4 on this slowly decaying series
    exact = mp.nsum(lambda n: mp.log(n + 1) / n**p, [1, mp.inf], method="euler-maclaurin")
    assert abs(rep.lhs.value - float(exact)) <= 1e-12


def test_prop2_large_p():
    rep = prop2_check(20.0, 1e-10)
    assert rep.passed
    assert abs(rep.lhs.value - math.log(2)) <= 3 * 2.0**-20


def test_prop2_domain():
    with pytest.raises(DomainError):
        prop2_check(1.0)


def test_skew_harmonic_dominated_by_harmonic():
    for n in range(1, 200):
        assert abs(skew_harmonic(n)) <= harmonic(n)
