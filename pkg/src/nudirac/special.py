"""Orthogonal polynomials and quadrature used by the closed-form spinors.

Jacobi and associated Laguerre polynomials are evaluated with their
three-term recurrences, seeded by the degree-0 and degree-1 closed forms.
Evaluation is valid for every real argument and every real parameter pair;
orthogonality only holds for ``a, b > -1`` on the usual intervals.
"""

from __future__ import annotations

import math
import warnings
from typing import Callable

import numpy as np
from scipy import integrate as _spi

from .errors import QuadratureError

__all__ = [
    "MAX_DEGREE",
    "PolynomialKind",
    "jacobi_eval",
    "laguerre_eval",
    "integrate",
    "integrate_to_infinity",
]

MAX_DEGREE = 50


class PolynomialKind:
    """Family tag plus parameters and degree of a classical polynomial.

    ``family`` is ``"jacobi"`` (parameters ``a``, ``b``) or ``"laguerre"``
    (parameter ``a``; ``b`` is ``None``).
    """

    __slots__ = ("family", "degree", "a", "b")

    def __init__(self, family: str, degree: int, a: float, b: float | None = None):
        if family not in ("jacobi", "laguerre"):
            raise ValueError(f"unknown polynomial family {family!r}")
        if family == "jacobi" and b is None:
            raise ValueError("Jacobi polynomials need both parameters")
        _check_degree(degree)
        self.family = family
        self.degree = int(degree)
        self.a = float(a)
        self.b = None if b is None else float(b)

    def __call__(self, x):
        if self.family == "jacobi":
            return jacobi_eval(self.degree, self.a, self.b, x)
        return laguerre_eval(self.degree, self.a, x)

    def orthogonal(self) -> bool:
        """True when the parameters admit the classical orthogonality weight."""
        if self.family == "jacobi":
            return self.a > -1.0 and self.b > -1.0
        return self.a > -1.0

    def __eq__(self, other):
        if not isinstance(other, PolynomialKind):
            return NotImplemented
        return (self.family, self.degree, self.a, self.b) == (
            other.family,
            other.degree,
            other.a,
            other.b,
        )

    def __repr__(self):
        if self.family == "jacobi":
            return f"Jacobi(n={self.degree}, a={self.a!r}, b={self.b!r})"
        return f"Laguerre(n={self.degree}, a={self.a!r})"


def _check_degree(n):
    if int(n) != n or n < 0:
        raise ValueError(f"degree must be a nonnegative integer, got {n!r}")
    if n > MAX_DEGREE:
        raise ValueError(f"degree {n} exceeds the supported maximum {MAX_DEGREE}")


def _as_float(x):
    if np.ndim(x) == 0:
        return float(x)
    return np.asarray(x, dtype=float)


def _gbinom(y: float, k: int) -> float:
    """Generalised binomial coefficient C(y, k) for real ``y``."""
    out = 1.0
    for i in range(k):
        out *= (y - i) / (i + 1)
    return out


def _jacobi_sum(n, a, b, x):
    # Explicit sum; only used where the recurrence hits a 0/0 coefficient.
    xm = (x - 1.0) / 2.0
    xp = (x + 1.0) / 2.0
    total = 0.0 * x
    for s in range(n + 1):
        total = total + _gbinom(n + a, n - s) * _gbinom(n + b, s) * xm**s * xp ** (n - s)
    return total


def jacobi_eval(n: int, a: float, b: float, x):
    """Jacobi polynomial :math:`P_n^{(a,b)}(x)`.

    Works for scalar or array ``x`` and any real ``a``, ``b``; arguments
    outside ``[-1, 1]`` are fine (the Pöschl–Teller map needs ``x > 1``).
    """
    _check_degree(n)
    x = _as_float(x)
    a = float(a)
    b = float(b)
    p0 = 1.0 + 0.0 * x
    if n == 0:
        return p0
    p1 = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0
    if n == 1:
        return p1
    ab = a + b
    for k in range(2, n + 1):
        c = 2 * k + ab
        denom = 2.0 * k * (k + ab) * (c - 2.0)
        if denom == 0.0:
            return _jacobi_sum(n, a, b, x)
        p2 = (
            (c - 1.0) * (c * (c - 2.0) * x + a * a - b * b) * p1
            - 2.0 * (k + a - 1.0) * (k + b - 1.0) * c * p0
        ) / denom
        p0, p1 = p1, p2
    return p1


def laguerre_eval(n: int, a: float, x):
    """Associated Laguerre polynomial :math:`L_n^{a}(x)`."""
    _check_degree(n)
    x = _as_float(x)
    a = float(a)
    p0 = 1.0 + 0.0 * x
    if n == 0:
        return p0
    p1 = 1.0 + a - x
    for k in range(2, n + 1):
        p0, p1 = p1, ((2 * k - 1 + a - x) * p1 - (k - 1 + a) * p0) / k
    return p1


def integrate(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-10,
    *,
    limit: int = 500,
    points=None,
) -> float:
    """Adaptive quadrature of ``f`` over ``[lo, hi]`` to absolute error ``tol``.

    Raises :class:`QuadratureError` when the subdivision budget ``limit`` is
    exhausted or the error estimate stays above ``tol``.
    """
    if not lo < hi:
        raise ValueError(f"need lo < hi, got [{lo}, {hi}]")
    if tol <= 0:
        raise ValueError("tol must be positive")
    with warnings.catch_warnings():
        warnings.simplefilter("error", _spi.IntegrationWarning)
        try:
            value, err = _spi.quad(
                f, lo, hi, epsabs=tol, epsrel=0.0, limit=limit, points=points
            )
        except _spi.IntegrationWarning as exc:
            raise QuadratureError(str(exc).strip().splitlines()[0]) from exc
    if not math.isfinite(value) or err > tol:
        raise QuadratureError(f"estimated error {err:.3g} exceeds tol {tol:.3g}")
    return float(value)


def integrate_to_infinity(
    f: Callable[[float], float],
    lo: float,
    tol: float = 1e-10,
    *,
    start: float = 10.0,
    floor: float = 1e-14,
    max_doublings: int = 12,
) -> float:
    """Integrate an exponentially decaying ``f`` over ``[lo, inf)``.

    The upper cutoff starts at ``lo + start`` and is doubled until the
    integrand magnitude there drops below ``floor`` and the value settles.
    """
    width = float(start)
    cutoff = lo + width
    for _ in range(max_doublings):
        if abs(f(cutoff)) < floor:
            break
        width *= 2.0
        cutoff = lo + width
    else:
        raise QuadratureError("integrand does not decay below the floor")
    value = integrate(f, lo, cutoff, tol)
    longer = integrate(f, lo, lo + 2.0 * width, tol)
    if abs(longer - value) > 10.0 * tol:
        raise QuadratureError("semi-infinite integral did not stabilise")
    return longer
