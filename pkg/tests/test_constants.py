import threading

import mpmath as mp
import pytest

from harmzeta.constants import ConstantsRegistry, registry
from harmzeta.errors import ConstantsMismatch
from harmzeta.numerics import digamma

mp.mp.dps = 40


def test_literals_match_high_precision_values():
    reg = registry()
    assert reg.gamma == float(mp.euler)
    assert reg.ln2 == float(mp.log(2))
    assert reg.zeta2 == float(mp.pi**2 / 6)


def test_reference_constants_from_independent_quadrature():
    f = lambda t: (mp.digamma(1 + t) + mp.euler) / t  # noqa: E731
    m = mp.quad(f, [0, 1])
    m1 = mp.quad(f, [1, 2])
    reg = registry()
    assert abs(reg.m_reference - float(m)) <= 2e-16
    assert abs(reg.m1_reference - float(m1)) <= 2e-16
    # published six- and five-digit values are truncations
    assert 0 <= reg.m_reference - 1.257746 < 1e-6
    assert 0 <= reg.m1_reference - 0.86062 < 1e-5


def test_cross_check_reports_small_discrepancies():
    diffs = registry().cross_check()
    assert set(diffs) == {"gamma", "ln2", "zeta2"}
    assert all(d <= 1e-13 for d in diffs.values())
    assert abs(registry().gamma + digamma(1.0)) <= 1e-13


def test_cross_check_detects_a_wrong_literal():
    with pytest.raises(ConstantsMismatch, match="gamma"):
        ConstantsRegistry(gamma=0.5772).cross_check()
    with pytest.raises(ConstantsMismatch, match="zeta2"):
        ConstantsRegistry(zeta2=1.6449).cross_check()


def test_registry_is_a_shared_singleton_under_threads():
    seen = []
    threads = [threading.Thread(target=lambda: seen.append(registry())) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r is seen[0] for r in seen)
