"""Closed-form radial spinor components.

The pseudospin limit yields the lower component G, the spin limit the
upper component F.  Each is ``|z|^s * edge(z) * P(z)`` in the variable of
the potential's map; normalisation is numerical.

Pöschl–Teller states use the odd whole-line polynomial of degree ``2n+1``
so that the function vanishes at the origin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonNormalizable
from .nu import WavefunctionForm, wavefunction_form
from .potentials import BoundProblem, VariableMap, effective_potential, kappa_term, to_nu_coefficients
from .special import PolynomialKind, integrate
from .spectrum import EnergyLevel

__all__ = [
    "RadialWavefunction",
    "PrintedForm",
    "build",
    "from_printed",
    "evaluate",
    "ode_residual",
    "node_count",
    "overlap",
    "printed_form",
    "default_grid",
]


@dataclass(frozen=True)
class RadialWavefunction:
    form: WavefunctionForm
    variable_map: VariableMap
    component: str  # "LowerG" or "UpperF"
    level: EnergyLevel
    norm: float
    sign: float
    cutoff: float

    def __call__(self, r):
        return evaluate(self, r)


def _raw(form: WavefunctionForm, vmap: VariableMap, r):
    return form(vmap.z(r))


def _cutoff(form, vmap, r_peak_guess):
    # walk out until |psi|^2 has fallen 32 orders below its running maximum
    rate = vmap.rate
    r = np.linspace(1e-6 / rate, r_peak_guess, 4000)
    vals = np.abs(_raw(form, vmap, r))
    peak = float(vals.max())
    if not np.isfinite(peak) or peak == 0.0:
        raise NonNormalizable("closed form vanishes or overflows on the sample grid")
    R = r_peak_guess
    for _ in range(60):
        if abs(_raw(form, vmap, R)) < 1e-16 * peak:
            return R, peak, r[int(np.argmax(vals))]
        R *= 1.5
    raise NonNormalizable("closed form does not decay at large r")


def build(prob: BoundProblem, level: EnergyLevel) -> RadialWavefunction:
    """Normalised closed-form radial function for a solved ``level``."""
    c, vmap = to_nu_coefficients(prob, level.E)
    form = wavefunction_form(c, vmap.degree(level.n), sqrt9_sign=vmap.sqrt9_sign)
    return _assemble(prob, level, form, vmap)


def from_printed(prob: BoundProblem, level: EnergyLevel, pf: "PrintedForm") -> RadialWavefunction:
    """Normalised radial function from an explicit :class:`PrintedForm`."""
    _, vmap = to_nu_coefficients(prob, level.E)
    jacobi = pf.polynomial.family == "jacobi"
    form = WavefunctionForm(
        variable_exponent=pf.s,
        edge_factor=pf.edge,
        polynomial=pf.polynomial,
        branch="jacobi" if jacobi else "laguerre",
        alpha3=1.0 if jacobi else 0.0,
        arg_scale=pf.arg_scale,
        z_exponent_positive=pf.s > 0.0,
        classical_weight=pf.polynomial.orthogonal(),
    )
    return _assemble(prob, level, form, vmap)


def _assemble(prob, level, form, vmap) -> RadialWavefunction:
    if not form.variable_exponent > 0.0:
        raise NonNormalizable(f"exponent of z is {form.variable_exponent!r}; no decay as r -> inf")
    if vmap.kind == "exp2" and not form.edge_factor > 0.0:
        raise NonNormalizable(f"exponent of (1 - z) is {form.edge_factor!r}; singular at the origin")

    R, peak, r_peak = _cutoff(form, vmap, 30.0 / prob.potential.alpha)
    pts = [float(r_peak)] if 0.0 < r_peak < R else None
    total = integrate(
        lambda x: (float(_raw(form, vmap, x)) / peak) ** 2,
        0.0,
        R,
        tol=1e-13 * R,
        limit=2000,
        points=pts,
    )
    norm = 1.0 / (peak * math.sqrt(total))

    # positive just off the origin
    r = np.linspace(R * 1e-6, R, 20001)
    vals = _raw(form, vmap, r)
    big = np.nonzero(np.abs(vals) > 1e-6 * peak)[0]
    sign = 1.0 if vals[big[0]] > 0 else -1.0

    component = "LowerG" if prob.symmetry.is_pseudospin else "UpperF"
    return RadialWavefunction(form, vmap, component, level, norm, sign, R)


def evaluate(w: RadialWavefunction, r):
    """Normalised value at ``r > 0`` (scalar or array)."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ValueError("r must be positive")
    out = w.sign * w.norm * _raw(w.form, w.variable_map, r)
    return float(out) if np.ndim(out) == 0 else out


def default_grid(prob: BoundProblem, points: int = 2000) -> np.ndarray:
    return np.geomspace(1e-3, 30.0 / prob.potential.alpha, points)


def ode_residual(w: RadialWavefunction, prob: BoundProblem, grid=None, E: float | None = None) -> float:
    """Max of ``|u'' - U u|`` over ``grid`` divided by the largest term magnitude.

    ``U`` uses the approximated centrifugal term.  ``E`` defaults to the
    level energy; pass another value to probe sensitivity.
    """
    r = default_grid(prob) if grid is None else np.asarray(grid, dtype=float)
    if not w.norm > 0:
        raise ValueError("wavefunction must have a positive norm")
    E = w.level.E if E is None else E
    inv_rate = 1.0 / w.variable_map.rate
    if w.variable_map.kind == "exp2":
        # fractional power of r at the origin: step must shrink with r
        h = 1e-3 * np.minimum(r, inv_rate)
    else:
        # analytic at the origin; a tiny step only amplifies cancellation noise
        h = np.minimum(1e-3 * inv_rate, 0.25 * r)
    f = [evaluate(w, r + k * h) for k in (-2, -1, 0, 1, 2)]
    d2 = (-f[0] + 16.0 * f[1] - 30.0 * f[2] + 16.0 * f[3] - f[4]) / (12.0 * h * h)
    Uu = effective_potential(prob, E, r) * f[2]
    scale = max(np.max(np.abs(d2)), np.max(np.abs(Uu)))
    return float(np.max(np.abs(d2 - Uu)) / scale)


def node_count(w: RadialWavefunction, points: int = 2000) -> int:
    """Sign changes of the radial function on a uniform grid up to the cutoff."""
    r = np.linspace(w.cutoff / points, w.cutoff, points)
    v = evaluate(w, r)
    v = v[np.abs(v) > 1e-8 * np.max(np.abs(v))]
    return int(np.count_nonzero(np.diff(np.sign(v)) != 0))


def overlap(w1: RadialWavefunction, w2: RadialWavefunction) -> float:
    """``int w1 w2 dr``; a diagnostic, levels of this nonlinear problem need not be orthogonal."""
    R = max(w1.cutoff, w2.cutoff)
    return integrate(lambda x: evaluate(w1, x) * evaluate(w2, x), 1e-12, R, tol=1e-10, limit=2000)


@dataclass(frozen=True)
class PrintedForm:
    """Per-potential closed form written out directly, without the NU engine.

    ``s`` is the power of ``|z|``, ``edge`` the exponent of ``(1 - z)`` (or
    the coefficient in ``exp(edge z)`` for Morse), ``polynomial`` the
    Jacobi/Laguerre factor.
    """

    s: float
    edge: float
    polynomial: PolynomialKind
    arg_scale: float = 1.0


def printed_form(prob: BoundProblem, E: float, n: int, *, paper_verbatim: bool = False) -> PrintedForm:
    """Explicit closed form of each family at energy ``E`` and level ``n``.

    ``paper_verbatim`` only changes the hypergeometric pseudospin Jacobi
    parameter, where the printed ``2 beta sqrt(eps mu D1^2)`` replaces
    ``2 beta sqrt(eps - mu D1^2)``.
    """
    p = prob.potential
    m = prob.mass
    c = prob.symmetry.constant
    a = p.alpha
    beta = 0.5 / a
    b2 = beta * beta
    kt = kappa_term(prob.symmetry, prob.state.kappa)

    if p.kind == "hypergeometric":
        D1, D2 = p.D1, p.D2
        if prob.symmetry.is_pseudospin:
            mu = m - E + c
            eps = m * (m + c) + E * (c - E)
            s = beta * math.sqrt(eps - mu * D1 * D1)
            q = math.sqrt(-mu * b2 * (D1 + D2) ** 2 + kt + 0.25)
            jac_a = 2.0 * beta * math.sqrt(eps * mu * D1 * D1) if paper_verbatim else 2.0 * s
        else:
            mup = m + E - c
            epsp = m * (c - m) + E * (E - c)
            s = beta * math.sqrt(mup * D1 * D1 - epsp)
            q = math.sqrt(mup * b2 * (D1 + D2) ** 2 + kt + 0.25)
            jac_a = 2.0 * s
        return PrintedForm(s, 0.5 + q, PolynomialKind("jacobi", n, jac_a, 2.0 * q))

    if p.kind == "morse":
        if prob.symmetry.is_pseudospin:
            mu = m - E + c
            s = math.sqrt(mu * (m + E)) / a
            t = math.sqrt(-mu * p.V1) / a
        else:
            mu = m + E - c
            s = math.sqrt(mu * (m - E)) / a
            t = math.sqrt(mu * p.V1) / a
        return PrintedForm(s, -t, PolynomialKind("laguerre", n, 2.0 * s), arg_scale=2.0 * t)

    # Pöschl–Teller: z = -exp(-2 alpha r)
    if prob.symmetry.is_pseudospin:
        mu = m - E + c
        s = math.sqrt(mu * (m + E)) / (2.0 * a)
        q = math.sqrt(0.25 - mu * p.V0 / (a * a))
    else:
        mu = m + E - c
        s = math.sqrt(mu * (m - E)) / (2.0 * a)
        q = math.sqrt(0.25 + mu * p.V0 / (a * a))
    return PrintedForm(s, 0.5 - q, PolynomialKind("jacobi", 2 * n + 1, 2.0 * s, -2.0 * q))
