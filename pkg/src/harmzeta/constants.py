"""Vetted reference constants and their startup cross-validation."""

from __future__ import annotations

import threading
from dataclasses import dataclass

from .errors import ConstantsMismatch

EULER_GAMMA = 0.57721566490153286
LN2 = 0.69314718055994531
ZETA2 = 1.6449340668482264
# 40-digit quadrature of the defining integrals, rounded to 17 digits.
M_REFERENCE = 1.2577468869443696
M1_REFERENCE = 0.86062019285313836

CROSS_CHECK_TOL = 1e-12


@dataclass(frozen=True)
class ConstantsRegistry:
    gamma: float = EULER_GAMMA
    ln2: float = LN2
    zeta2: float = ZETA2
    m_reference: float = M_REFERENCE
    m1_reference: float = M1_REFERENCE

    def cross_check(self) -> dict[str, float]:
        """Compare the stored literals against the package's own special functions.

        Returns the absolute discrepancies keyed by constant name and raises
        :class:`ConstantsMismatch` if any exceeds ``CROSS_CHECK_TOL``.
        """
        from .numerics import digamma, hurwitz_zeta, log_gamma

        diffs = {
            "gamma": abs(self.gamma + digamma(1.0)),
            "ln2": abs(self.ln2 - log_gamma(3.0)),
            "zeta2": abs(self.zeta2 - hurwitz_zeta(2.0, 1.0)),
        }
        bad = {k: v for k, v in diffs.items() if v > CROSS_CHECK_TOL}
        if bad:
            detail = ", ".join(f"{k}: |diff|={v:.3e}" for k, v in sorted(bad.items()))
            raise ConstantsMismatch(f"stored constants disagree with implementation ({detail})")
        return diffs


_lock = threading.Lock()
_validated: ConstantsRegistry | None = None


def registry() -> ConstantsRegistry:
    """The process-wide registry, cross-validated on first use."""
    global _validated
    with _lock:
        if _validated is None:
            reg = ConstantsRegistry()
            reg.cross_check()
            _validated = reg
        return _validated
