"""Truncated Taylor arithmetic, used to get the derivatives an Euler-Maclaurin tail needs.

A :class:`Jet` holds ``c[k] = f^(k)(x0) / k!`` for k < order.
"""

from __future__ import annotations

import math


class Jet:
    __slots__ = ("c",)

    def __init__(self, coeffs):
        self.c = list(coeffs)

    @classmethod
    def variable(cls, x0: float, order: int) -> "Jet":
        c = [0.0] * order
        c[0] = float(x0)
        if order > 1:
            c[1] = 1.0
        return cls(c)

    @property
    def order(self) -> int:
        return len(self.c)

    def derivative(self, k: int) -> float:
        return self.c[k] * math.factorial(k)

    def _lift(self, other) -> "Jet":
        if isinstance(other, Jet):
            return other
        c = [0.0] * self.order
        c[0] = float(other)
        return Jet(c)

    def __add__(self, other):
        o = self._lift(other)
        return Jet([a + b for a, b in zip(self.c, o.c)])

    __radd__ = __add__

    def __neg__(self):
        return Jet([-a for a in self.c])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return Jet([a * other for a in self.c])
        n = self.order
        return Jet([sum(self.c[i] * other.c[k - i] for i in range(k + 1)) for k in range(n)])

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            return Jet([a / other for a in self.c])
        n = self.order
        b = other.c
        q = [0.0] * n
        for k in range(n):
            q[k] = (self.c[k] - sum(q[i] * b[k - i] for i in range(k))) / b[0]
        return Jet(q)

    def __rtruediv__(self, other):
        return self._lift(other) / self


def log(u: Jet) -> Jet:
    # w' = u'/u  =>  k w_k u_0 = k u_k - sum_{j=1}^{k-1} j w_j u_{k-j}
    n = u.order
    w = [0.0] * n
    w[0] = math.log(u.c[0])
    for k in range(1, n):
        acc = k * u.c[k] - sum(j * w[j] * u.c[k - j] for j in range(1, k))
        w[k] = acc / (k * u.c[0])
    return Jet(w)


def log1p(u: Jet) -> Jet:
    """log(1 + u), keeping full relative accuracy in the value when u_0 is tiny."""
    w = log(1.0 + u)
    w.c[0] = math.log1p(u.c[0])
    return w


def exp(u: Jet) -> Jet:
    # w' = u' w  =>  k w_k = sum_{j=1}^{k} j u_j w_{k-j}
    n = u.order
    w = [0.0] * n
    w[0] = math.exp(u.c[0])
    for k in range(1, n):
        w[k] = sum(j * u.c[j] * w[k - j] for j in range(1, k + 1)) / k
    return Jet(w)


def power(u: Jet, p: float) -> Jet:
    return exp(log(u) * p)
