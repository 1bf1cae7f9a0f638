"""Parametric Nikiforov–Uvarov reduction.

The engine works on the normalised second-order equation

    z^2 (1 - a3 z)^2 psi'' + z (1 - a3 z)(a1 - a2 z) psi' + (-x1 z^2 + x2 z - x3) psi = 0

and maps its six coefficients to the derived parameter set, the
quantization condition and the closed-form solution
``z^a12 (1 - a3 z)^(-a12 - a13/a3) P_n(1 - 2 a3 z)`` (Laguerre limit for
``a3 = 0``).

``sqrt9_sign`` selects the root of ``alpha9`` used throughout.  ``+1`` is
the usual choice (regular behaviour at ``z = 1/a3``); ``-1`` is needed when
the physical domain lies at ``z < 0`` and the tail sits at ``z -> -inf``
instead of at ``z = 1/a3``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NegativeDiscriminant
from .special import PolynomialKind

__all__ = [
    "NuCoefficients",
    "NuDerived",
    "WavefunctionForm",
    "derive_parameters",
    "quantization_residual",
    "wavefunction_form",
    "ode_residual",
]


@dataclass(frozen=True)
class NuCoefficients:
    alpha1: float
    alpha2: float
    alpha3: float
    xi1: float
    xi2: float
    xi3: float

    def __post_init__(self):
        for name in ("alpha1", "alpha2", "alpha3", "xi1", "xi2", "xi3"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.alpha3 < 0:
            raise ValueError(f"alpha3 must be >= 0, got {self.alpha3}")


@dataclass(frozen=True)
class NuDerived:
    alpha4: float
    alpha5: float
    alpha6: float
    alpha7: float
    alpha8: float
    alpha9: float
    alpha10: float
    alpha11: float
    alpha12: float
    alpha13: float
    k: float
    tau_prime_negative: bool
    sqrt9_sign: int = 1

    @property
    def root8(self) -> float:
        return math.sqrt(self.alpha8)

    @property
    def root9(self) -> float:
        return self.sqrt9_sign * math.sqrt(self.alpha9)


def _sign(s) -> int:
    if s not in (1, -1):
        raise ValueError("sqrt9_sign must be +1 or -1")
    return int(s)


def derive_parameters(
    c: NuCoefficients, *, sqrt9_sign: int = 1, k_branch: str = "minus"
) -> NuDerived:
    """Derived parameters alpha4..alpha13, the NU constant ``k`` and the tau' flag.

    ``k_branch="plus"`` returns the other root of the k-equation for
    diagnostics; every downstream quantity still uses the minus-branch
    polynomial, which is the one giving a negative tau'.
    """
    sgn = _sign(sqrt9_sign)
    a1, a2, a3 = c.alpha1, c.alpha2, c.alpha3
    a4 = 0.5 * (1.0 - a1)
    a5 = 0.5 * (a2 - 2.0 * a3)
    a6 = a5 * a5 + c.xi1
    a7 = 2.0 * a4 * a5 - c.xi2
    a8 = a4 * a4 + c.xi3
    a9 = a3 * a7 + a3 * a3 * a8 + a6
    if a8 < 0.0:
        raise NegativeDiscriminant(f"alpha8 = {a8!r} < 0")
    if a9 < 0.0:
        raise NegativeDiscriminant(f"alpha9 = {a9!r} < 0")
    r8 = math.sqrt(a8)
    r9 = sgn * math.sqrt(a9)
    if k_branch == "minus":
        k = -(a7 + 2.0 * a3 * a8) - 2.0 * r8 * r9
    elif k_branch == "plus":
        k = -(a7 + 2.0 * a3 * a8) + 2.0 * r8 * r9
    else:
        raise ValueError(f"k_branch must be 'minus' or 'plus', not {k_branch!r}")
    tau_prime = -2.0 * a3 - 2.0 * (r9 + a3 * r8)
    return NuDerived(
        alpha4=a4,
        alpha5=a5,
        alpha6=a6,
        alpha7=a7,
        alpha8=a8,
        alpha9=a9,
        alpha10=a1 + 2.0 * a4 + 2.0 * r8,
        alpha11=a2 - 2.0 * a5 + 2.0 * (r9 + a3 * r8),
        alpha12=a4 + r8,
        alpha13=a5 - (r9 + a3 * r8),
        k=k,
        tau_prime_negative=tau_prime < 0.0,
        sqrt9_sign=sgn,
    )


def quantization_residual(
    c: NuCoefficients, n: int, *, sqrt9_sign: int = 1, paper_verbatim: bool = False
) -> float:
    """Left-hand side of the NU energy condition at level ``n``; zero on a level.

    The general condition is used for every ``alpha3`` including zero.  With
    ``paper_verbatim=True`` and ``alpha3 == 0`` the separately printed
    Laguerre-branch form is returned instead; it flips the signs of
    ``alpha5`` and of ``2 sqrt(alpha8 alpha9)`` and does not annihilate the
    Laguerre solution (kept for the errata comparison).
    """
    if n < 0 or int(n) != n:
        raise ValueError("n must be a nonnegative integer")
    d = derive_parameters(c, sqrt9_sign=sqrt9_sign)
    a2, a3 = c.alpha2, c.alpha3
    r8, r9 = d.root8, d.root9
    if paper_verbatim and a3 == 0.0:
        return (
            a2 * n
            - 2.0 * d.alpha5 * n
            + (2 * n + 1) * (r9 - a3 * r8)
            + n * (n - 1) * a3
            + d.alpha7
            + 2.0 * a3 * d.alpha8
            - 2.0 * r8 * r9
            + d.alpha5
        )
    return (
        n * ((n - 1) * a3 + a2 - 2.0 * d.alpha5)
        - d.alpha5
        + (2 * n + 1) * (r9 + a3 * r8)
        + d.alpha7
        + 2.0 * a3 * d.alpha8
        + 2.0 * r8 * r9
    )


@dataclass(frozen=True)
class WavefunctionForm:
    """Closed-form solution ``|z|^p * edge(z) * poly(arg(z))``.

    ``edge_factor`` is the exponent on ``(1 - alpha3 z)`` for the Jacobi
    branch and the coefficient in ``exp(edge_factor * z)`` for the Laguerre
    branch.  The polynomial argument is ``1 - 2 alpha3 z`` (Jacobi) or
    ``alpha11 z`` (Laguerre).
    """

    variable_exponent: float
    edge_factor: float
    polynomial: PolynomialKind
    branch: str
    alpha3: float
    arg_scale: float
    z_exponent_positive: bool
    classical_weight: bool

    def poly_argument(self, z):
        if self.branch == "jacobi":
            return 1.0 - 2.0 * self.alpha3 * z
        return self.arg_scale * z

    def __call__(self, z):
        z = np.asarray(z, dtype=float)
        lead = np.abs(z) ** self.variable_exponent
        if self.branch == "jacobi":
            edge = (1.0 - self.alpha3 * z) ** self.edge_factor
        else:
            edge = np.exp(self.edge_factor * z)
        out = lead * edge * self.polynomial(self.poly_argument(z))
        return float(out) if out.ndim == 0 else out


def wavefunction_form(
    c: NuCoefficients, n: int, *, sqrt9_sign: int = 1
) -> WavefunctionForm:
    """Closed-form solution descriptor for level ``n``.

    Parameters that break the classical orthogonality weight are flagged via
    ``classical_weight`` rather than rejected.
    """
    d = derive_parameters(c, sqrt9_sign=sqrt9_sign)
    if c.alpha3 == 0.0:
        poly = PolynomialKind("laguerre", n, d.alpha10 - 1.0)
        edge = d.alpha13
        branch = "laguerre"
    else:
        a3 = c.alpha3
        poly = PolynomialKind(
            "jacobi", n, d.alpha10 - 1.0, d.alpha11 / a3 - d.alpha10 - 1.0
        )
        edge = -d.alpha12 - d.alpha13 / a3
        branch = "jacobi"
    return WavefunctionForm(
        variable_exponent=d.alpha12,
        edge_factor=edge,
        polynomial=poly,
        branch=branch,
        alpha3=c.alpha3,
        arg_scale=d.alpha11,
        z_exponent_positive=d.alpha12 > 0.0,
        classical_weight=poly.orthogonal(),
    )


def ode_residual(c: NuCoefficients, psi, z, h: float = 1e-4) -> np.ndarray:
    """Pointwise residual of the NU equation for ``psi`` at points ``z``.

    Derivatives come from 5-point central differences with step ``h``; the
    result is divided by the largest of the three term magnitudes at each
    point.
    """
    z = np.asarray(z, dtype=float)
    f = [psi(z + k * h) for k in (-2, -1, 0, 1, 2)]
    d1 = (f[0] - 8.0 * f[1] + 8.0 * f[3] - f[4]) / (12.0 * h)
    d2 = (-f[0] + 16.0 * f[1] - 30.0 * f[2] + 16.0 * f[3] - f[4]) / (12.0 * h * h)
    s = 1.0 - c.alpha3 * z
    t2 = z * z * s * s * d2
    t1 = z * s * (c.alpha1 - c.alpha2 * z) * d1
    t0 = (-c.xi1 * z * z + c.xi2 * z - c.xi3) * f[2]
    scale = np.maximum.reduce([np.abs(t2), np.abs(t1), np.abs(t0)])
    return np.abs(t2 + t1 + t0) / scale
