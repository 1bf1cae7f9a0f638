"""Exponential potentials, symmetry limits and the reduction to NU form.

Natural units (hbar = c = 1) throughout.  In the pseudospin limit the
constant is ``C`` (the sum potential) and the difference potential carries
``V(r)``; the lower component obeys

    G'' = [kappa(kappa-1)/r^2 + (m - E + C)(m + E - V)] G.

In the spin limit the constant is ``Delta`` and

    F'' = [kappa(kappa+1)/r^2 + (m + E - Delta)(m - E + V)] F.

:func:`to_nu_coefficients` rewrites either equation, with the exponential
centrifugal approximation where needed, as the normalised NU equation.
``paper_verbatim=True`` returns the published coefficient sets instead of the ones
re-derived from the equations above; see :mod:`nudirac.errata` for the differences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import UnsupportedChannel
from .nu import NuCoefficients

__all__ = [
    "Hypergeometric",
    "Morse",
    "PoschlTeller",
    "SymmetryLimit",
    "QuantumState",
    "BoundProblem",
    "VariableMap",
    "evaluate_potential",
    "centrifugal_approx",
    "kappa_term",
    "effective_potential",
    "to_nu_coefficients",
]


@dataclass(frozen=True)
class Hypergeometric:
    """``D (1 - sigma coth(alpha r))^2`` family; see :meth:`value` for the form used."""

    D: float
    sigma: float
    alpha: float
    kind = "hypergeometric"

    def __post_init__(self):
        if not self.D >= 0:
            raise ValueError(f"D must be nonnegative, got {self.D}")
        if not self.alpha > 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if not math.isfinite(self.sigma):
            raise ValueError("sigma must be finite")

    @property
    def D1(self) -> float:
        return math.sqrt(self.D) * (1.0 - self.sigma)

    @property
    def D2(self) -> float:
        return math.sqrt(self.D) * (1.0 + self.sigma)

    @property
    def manning_rosen(self) -> bool:
        return self.sigma == 1.0

    @property
    def scale(self) -> float:
        return max(self.D, self.D1**2, self.D2**2)

    def value(self, r):
        # (D1 + D2 z)^2 / (1 - z)^2 with z = exp(-2 alpha r); this equals
        # D (coth(alpha r) - sigma)^2.
        x = -2.0 * self.alpha * np.asarray(r, dtype=float)
        return ((self.D1 + self.D2 * np.exp(x)) / -np.expm1(x)) ** 2


@dataclass(frozen=True)
class Morse:
    """Generalised Morse potential ``V1 exp(-2 alpha r) - V2 exp(-alpha r)``."""

    V1: float
    V2: float
    alpha: float
    kind = "morse"

    def __post_init__(self):
        if not self.V1 > 0:
            raise ValueError(f"V1 must be positive, got {self.V1}")
        if not self.alpha > 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if not math.isfinite(self.V2):
            raise ValueError("V2 must be finite")

    @property
    def scale(self) -> float:
        # well depth V2^2 / (4 V1); a tiny-exponent well with huge V1 is still shallow
        if self.V2 > 0:
            return max(self.V2 * self.V2 / (4.0 * self.V1), 1e-3)
        return abs(self.V1)

    def value(self, r):
        x = np.exp(-self.alpha * np.asarray(r, dtype=float))
        return self.V1 * x * x - self.V2 * x


@dataclass(frozen=True)
class PoschlTeller:
    """Pöschl–Teller well ``-4 V0 exp(-2 alpha r) / (1 + exp(-2 alpha r))^2``."""

    V0: float
    alpha: float
    kind = "poschl-teller"

    def __post_init__(self):
        if not self.V0 > 0:
            raise ValueError(f"V0 must be positive, got {self.V0}")
        if not self.alpha > 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")

    @property
    def scale(self) -> float:
        return abs(self.V0)

    def value(self, r):
        x = np.exp(-2.0 * self.alpha * np.asarray(r, dtype=float))
        return -4.0 * self.V0 * x / (1.0 + x) ** 2


@dataclass(frozen=True)
class SymmetryLimit:
    """``kind`` is ``"pseudospin"`` (constant ``C``) or ``"spin"`` (constant ``Delta``)."""

    kind: str
    constant: float = 0.0

    def __post_init__(self):
        if self.kind not in ("pseudospin", "spin"):
            raise ValueError(f"unknown symmetry limit {self.kind!r}")
        if not math.isfinite(self.constant):
            raise ValueError("symmetry constant must be finite")

    @classmethod
    def pseudospin(cls, C: float = 0.0) -> "SymmetryLimit":
        return cls("pseudospin", float(C))

    @classmethod
    def spin(cls, Delta: float = 0.0) -> "SymmetryLimit":
        return cls("spin", float(Delta))

    @property
    def is_pseudospin(self) -> bool:
        return self.kind == "pseudospin"


@dataclass(frozen=True)
class QuantumState:
    n: int
    kappa: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise ValueError(f"n must be a nonnegative integer, got {self.n}")
        if int(self.kappa) != self.kappa:
            raise ValueError(f"kappa must be an integer, got {self.kappa}")

    @property
    def j(self) -> float:
        return abs(self.kappa) - 0.5

    @property
    def l(self) -> float:
        return abs(self.kappa + 0.5) - 0.5

    @property
    def l_tilde(self) -> float:
        return abs(self.kappa - 0.5) - 0.5


@dataclass(frozen=True)
class BoundProblem:
    potential: Hypergeometric | Morse | PoschlTeller
    symmetry: SymmetryLimit
    mass: float
    state: QuantumState

    def __post_init__(self):
        if not self.mass > 0:
            raise ValueError(f"mass must be positive, got {self.mass}")
        kappa = self.state.kappa
        if self.potential.kind == "hypergeometric":
            if kappa == 0:
                raise UnsupportedChannel("kappa = 0 is not a Dirac partial wave")
        else:
            allowed = (0, 1) if self.symmetry.is_pseudospin else (0, -1)
            if kappa not in allowed:
                raise UnsupportedChannel(
                    f"{self.potential.kind} is solved only in the vanishing "
                    f"kappa-term channel; kappa must be one of {allowed}, got {kappa}"
                )

    def with_n(self, n: int) -> "BoundProblem":
        return BoundProblem(self.potential, self.symmetry, self.mass, QuantumState(n, self.state.kappa))

    def with_potential(self, potential) -> "BoundProblem":
        return BoundProblem(potential, self.symmetry, self.mass, self.state)


def evaluate_potential(p, r):
    """Potential ``V(r)`` for ``r > 0`` (scalar or array)."""
    if np.any(np.asarray(r) <= 0):
        raise ValueError("r must be positive")
    out = p.value(r)
    return float(out) if np.ndim(out) == 0 else out


def centrifugal_approx(kterm: float, alpha: float, r):
    """Exponential stand-in ``kterm * 4 alpha^2 e^{-2 alpha r} / (1 - e^{-2 alpha r})^2``."""
    r = np.asarray(r, dtype=float)
    out = kterm * (alpha / np.sinh(alpha * r)) ** 2
    return float(out) if out.ndim == 0 else out


def kappa_term(symmetry: SymmetryLimit, kappa: int) -> int:
    """``kappa(kappa-1)`` for pseudospin, ``kappa(kappa+1)`` for spin."""
    if symmetry.is_pseudospin:
        return kappa * (kappa - 1)
    return kappa * (kappa + 1)


def effective_potential(prob: BoundProblem, E: float, r, centrifugal: str = "approx"):
    """``U(r)`` in ``u'' = U u`` for the radial component the limit decouples."""
    r = np.asarray(r, dtype=float)
    m = prob.mass
    c = prob.symmetry.constant
    kt = kappa_term(prob.symmetry, prob.state.kappa)
    V = prob.potential.value(r)
    if kt == 0:
        cent = 0.0 * r
    elif centrifugal == "approx":
        cent = centrifugal_approx(kt, prob.potential.alpha, r)
    elif centrifugal == "exact":
        cent = kt / (r * r)
    else:
        raise ValueError(f"centrifugal must be 'approx' or 'exact', not {centrifugal!r}")
    if prob.symmetry.is_pseudospin:
        out = cent + (m - E + c) * (m + E - V)
    else:
        out = cent + (m + E - c) * (m - E + V)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class VariableMap:
    """Exponential change of variable ``z(r)``.

    ``kind``: ``"exp2"`` for ``z = e^{-2 alpha r}``, ``"exp1"`` for
    ``z = e^{-alpha r}``, ``"negexp2"`` for ``z = -e^{-2 alpha r}``.

    For ``negexp2`` the physical half-line maps to ``z in (-1, 0)``; the
    closed form is the whole-line solution, the tail sits at ``z -> -inf``
    and only odd whole-line states vanish at ``r = 0``.  Hence the negative
    ``alpha9`` root and the polynomial degree ``2n + 1``.
    """

    kind: str
    alpha: float
    sqrt9_sign: int = 1
    odd_degree: bool = False

    @property
    def rate(self) -> float:
        """``|dz/dr| / |z|``."""
        return self.alpha if self.kind == "exp1" else 2.0 * self.alpha

    def z(self, r):
        r = np.asarray(r, dtype=float)
        out = np.exp(-self.rate * r)
        if self.kind == "negexp2":
            out = -out
        return float(out) if out.ndim == 0 else out

    def r(self, z):
        z = np.asarray(z, dtype=float)
        out = -np.log(np.abs(z)) / self.rate
        return float(out) if out.ndim == 0 else out

    def degree(self, n: int) -> int:
        return 2 * n + 1 if self.odd_degree else n


def to_nu_coefficients(prob: BoundProblem, E: float, *, paper_verbatim: bool = False):
    """NU coefficients and variable map for trial energy ``E``.

    Returns ``(NuCoefficients, VariableMap)``.  ``mu`` in the Morse and
    Pöschl–Teller sets is the rest mass ``m``.
    """
    p = prob.potential
    m = float(prob.mass)
    c = prob.symmetry.constant
    E = float(E)
    kappa = prob.state.kappa
    pseudo = prob.symmetry.is_pseudospin
    a = p.alpha
    b2 = 1.0 / (4.0 * a * a)

    if p.kind == "hypergeometric":
        D1, D2 = p.D1, p.D2
        vmap = VariableMap("exp2", a)
        if pseudo:
            mu = m - E + c
            eps = m * (m + c) + E * (c - E)
            kt = kappa * (kappa - 1)
            xi1 = -b2 * (mu * D2 * D2 - eps)
            sgn_eps = -1.0 if paper_verbatim else 1.0
            xi2 = 2.0 * b2 * (D1 * D2 * mu + sgn_eps * eps - 2.0 * a * a * kt)
            xi3 = -b2 * (mu * D1 * D1 - eps)
        else:
            mup = m + E - c
            epsp = m * (c - m) + E * (E - c)
            kt = kappa * (kappa + 1)
            xi1 = -b2 * (epsp - mup * D2 * D2)
            xi2 = -2.0 * b2 * (epsp + D1 * D2 * mup + 2.0 * a * a * kt)
            xi3 = -b2 * (epsp - mup * D1 * D1)
        return NuCoefficients(1.0, 1.0, 1.0, xi1, xi2, xi3), vmap

    if p.kind == "morse":
        vmap = VariableMap("exp1", a)
        f = 4.0 * b2  # 1 / alpha^2
        if pseudo:
            mu_p = m - E + c
            if paper_verbatim:
                xi1 = f * p.V1 * mu_p
                xi2 = f * p.V2 * mu_p
                xi3 = f * (E * E - m * m - E * (m + c))
            else:
                xi1 = -f * p.V1 * mu_p
                xi2 = -f * p.V2 * mu_p
                xi3 = f * mu_p * (m + E)
        else:
            mu_s = m + E - c
            xi1 = f * p.V1 * mu_s
            xi2 = f * p.V2 * mu_s
            xi3 = f * (m * m - E * E + c * (E - m))
        return NuCoefficients(1.0, 0.0, 0.0, xi1, xi2, xi3), vmap

    if p.kind == "poschl-teller":
        if paper_verbatim:
            vmap = VariableMap("negexp2", a)
        else:
            vmap = VariableMap("negexp2", a, sqrt9_sign=-1, odd_degree=True)
        V0 = p.V0
        if pseudo:
            mu_p = m - E + c
            if paper_verbatim:
                xi1 = b2 * (m + E) * (-m - c + E)
                xi2 = 2.0 * b2 * (-m - c + E) * (m + E + 2.0 * V0)
            else:
                xi1 = b2 * mu_p * (m + E)
                xi2 = b2 * mu_p * (2.0 * (m + E) + 4.0 * V0)
        else:
            mu_s = m + E - c
            xi1 = b2 * (E - m) * (c - m - E)
            xi2 = 2.0 * b2 * (c - m - E) * (E - m + 2.0 * V0)
            if not paper_verbatim:
                xi1 = b2 * mu_s * (m - E)
                xi2 = b2 * mu_s * (2.0 * (m - E) - 4.0 * V0)
        return NuCoefficients(1.0, 1.0, 1.0, xi1, xi2, xi1), vmap

    raise TypeError(f"unknown potential {p!r}")
