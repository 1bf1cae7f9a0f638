"""Energy eigenvalue equations and the scan-plus-bracketing root finder.

Each potential/limit pair has its own closed eigenvalue equation, tagged by
an equation id (``"Eq34"`` ... ``"Eq56"``).  Two variants exist per id:

* the default variant, re-derived from the radial equations in
  :mod:`nudirac.potentials` and written without squaring, so it has no
  spurious roots;
* ``paper_verbatim=True``, the equation exactly as printed (squared forms
  included).

Both are root-equivalent to the general NU condition for the hypergeometric
family; for Morse and Pöschl–Teller the printed forms differ (see
:mod:`nudirac.errata`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .errors import BracketTooNarrow
from .potentials import BoundProblem, kappa_term

__all__ = [
    "DomainViolation",
    "EnergyLevel",
    "SolverConfig",
    "SolveReport",
    "EQUATIONS",
    "default_equation",
    "residual",
    "solve",
    "solve_detailed",
    "find_roots",
    "branch_of",
]

EQUATIONS = ("Eq34", "Eq36", "Eq39", "Eq41", "Eq45", "Eq48", "Eq53", "Eq56")


class DomainViolation:
    """Returned by :func:`residual` when a square-root argument is negative.

    Not an error: it marks a trial energy outside the bound-state window.
    """

    __slots__ = ("reason",)

    def __init__(self, reason: str = ""):
        self.reason = reason

    def __bool__(self):
        return False

    def __repr__(self):
        return f"DomainViolation({self.reason!r})"


@dataclass(frozen=True)
class EnergyLevel:
    E: float
    n: int
    kappa: int
    residual: float
    branch: str
    equation_id: str
    grazing: bool = False


@dataclass(frozen=True)
class SolverConfig:
    bracket_lo: float | None = None
    bracket_hi: float | None = None
    scan_points: int = 2000
    tol: float = 1e-10
    max_iter: int = 200

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.scan_points < 2:
            raise ValueError("scan_points must be at least 2")
        if self.max_iter < 1:
            raise ValueError("max_iter must be positive")
        if (
            self.bracket_lo is not None
            and self.bracket_hi is not None
            and not self.bracket_lo < self.bracket_hi
        ):
            raise ValueError("bracket_lo must be below bracket_hi")

    def window(self, prob: BoundProblem) -> tuple[float, float]:
        """Scan window; the default spans the rest mass, the constant and 10x the potential scale."""
        m = prob.mass
        c = abs(prob.symmetry.constant)
        scale = prob.potential.scale
        lo = self.bracket_lo if self.bracket_lo is not None else -m - c - 10.0 * scale
        hi = self.bracket_hi if self.bracket_hi is not None else m + c + 10.0 * scale
        return float(lo), float(hi)


def branch_of(prob: BoundProblem) -> str:
    return "PseudospinNegative" if prob.symmetry.is_pseudospin else "SpinPositive"


def default_equation(prob: BoundProblem) -> str:
    kind = prob.potential.kind
    pseudo = prob.symmetry.is_pseudospin
    if kind == "hypergeometric":
        if prob.potential.manning_rosen:
            return "Eq36" if pseudo else "Eq41"
        return "Eq34" if pseudo else "Eq39"
    if kind == "morse":
        return "Eq45" if pseudo else "Eq48"
    return "Eq53" if pseudo else "Eq56"


_COMPATIBLE = {
    "Eq34": ("hypergeometric", True),
    "Eq36": ("hypergeometric", True),
    "Eq39": ("hypergeometric", False),
    "Eq41": ("hypergeometric", False),
    "Eq45": ("morse", True),
    "Eq48": ("morse", False),
    "Eq53": ("poschl-teller", True),
    "Eq56": ("poschl-teller", False),
}


def _sqrt(x, what):
    if x < 0.0:
        raise _Domain(what)
    return math.sqrt(x)


class _Domain(Exception):
    pass


def _hyper_pseudo(prob, E, n):
    p = prob.potential
    m, C, a = prob.mass, prob.symmetry.constant, p.alpha
    D1, D2 = p.D1, p.D2
    beta = 0.5 / a
    b2 = beta * beta
    kt = kappa_term(prob.symmetry, prob.state.kappa)
    mu = m - E + C
    eps = m * (m + C) + E * (C - E)
    A = _sqrt(b2 * (4.0 * a * a * kt - mu * (D1 + D2) ** 2) + 0.25, "alpha9 < 0")
    B = _sqrt(eps - mu * D1 * D1, "eps - mu D1^2 < 0")
    return (
        (A + beta * B) * (2 * n + 1 + 2.0 * beta * B)
        + b2 * (4.0 * a * a * kt - 2.0 * (eps + mu * D1 * D2))
        + n * (n + 1)
        + 0.5
    )


def _manning_rosen_pseudo(prob, E, n):
    p = prob.potential
    m, C, a, D = prob.mass, prob.symmetry.constant, p.alpha, p.D
    beta = 0.5 / a
    b2 = beta * beta
    kt = kappa_term(prob.symmetry, prob.state.kappa)
    mu = m - E + C
    eps = m * (m + C) + E * (C - E)
    A = _sqrt(4.0 * b2 * (a * a * kt - D * mu) + 0.25, "alpha9 < 0")
    B = _sqrt(eps, "eps < 0")
    return (
        (A + beta * B) * (2 * n + 1 + 2.0 * beta * B)
        + 4.0 * b2 * (a * a * kt - eps / 2.0)
        + 0.25 * ((2 * n + 1) ** 2 + 1)
    )


def _hyper_spin(prob, E, n):
    p = prob.potential
    m, Dl, a = prob.mass, prob.symmetry.constant, p.alpha
    D1, D2 = p.D1, p.D2
    beta = 0.5 / a
    b2 = beta * beta
    kt = kappa_term(prob.symmetry, prob.state.kappa)
    mup = m + E - Dl
    epsp = m * (Dl - m) + E * (E - Dl)
    A = _sqrt(b2 * mup * (D1 + D2) ** 2 + kt + 0.25, "alpha9 < 0")
    B = _sqrt(mup * D1 * D1 - epsp, "mu' D1^2 - eps' < 0")
    return (
        (A + beta * B) * (2 * n + 1 + 2.0 * beta * B)
        + b2 * (4.0 * a * a * kt + 2.0 * (epsp + mup * D1 * D2))
        + n * (n + 1)
        + 0.5
    )


def _manning_rosen_spin(prob, E, n):
    p = prob.potential
    m, Dl, a, D = prob.mass, prob.symmetry.constant, p.alpha, p.D
    beta = 0.5 / a
    b2 = beta * beta
    kt = kappa_term(prob.symmetry, prob.state.kappa)
    A = _sqrt(4.0 * b2 * D * (m + E - Dl) + kt + 0.25, "alpha9 < 0")
    B = _sqrt(m * (m - Dl) + E * (Dl - E), "m(m-C) + E(C-E) < 0")
    return (
        (A + beta * B) * (2 * n + 1 + 2.0 * beta * B)
        + b2 * (4.0 * a * a * kt + 2.0 * (m * (Dl - m) + E * (E - Dl)))
        + 0.25 * ((2 * n + 1) ** 2 + 1)
    )


def _morse_pseudo(prob, E, n, verbatim):
    p = prob.potential
    m, S, a = prob.mass, prob.symmetry.constant, p.alpha
    if verbatim:
        root = _sqrt(m - E + S, "mu - E + Sigma < 0")
        lhs = E * E - E * (m + S) - m * m
        rhs = a * a / 4.0 * (2 * n + 1 - p.V2 / (a * math.sqrt(p.V1)) * root) ** 2
        return lhs - rhs
    nu = _sqrt(E - m - S, "E - m - Sigma < 0")
    X = _sqrt((m - E + S) * (m + E), "(m - E + Sigma)(m + E) < 0")
    return X + a * (2 * n + 1) / 2.0 - p.V2 * nu / (2.0 * math.sqrt(p.V1))


def _morse_spin(prob, E, n, verbatim):
    p = prob.potential
    m, Dl, a = prob.mass, prob.symmetry.constant, p.alpha
    mus = _sqrt(E + m - Dl, "E + m - Delta < 0")
    if verbatim:
        lhs = m * m - E * E + Dl * (E - m)
        rhs = a * a / 4.0 * (2 * n + 1 - p.V2 / (a * math.sqrt(p.V1)) * mus) ** 2
        return lhs - rhs
    X = _sqrt(m * m - E * E + Dl * (E - m), "m^2 - E^2 + Delta(E - m) < 0")
    return X + a * (2 * n + 1) / 2.0 - p.V2 * mus / (2.0 * math.sqrt(p.V1))


def _pt_pseudo(prob, E, n, verbatim):
    p = prob.potential
    m, S, a, V0 = prob.mass, prob.symmetry.constant, p.alpha, p.V0
    if verbatim:
        root = _sqrt(4.0 * V0 * (m - E + S) + a * a, "4 V0 (mu - E + Sigma) + alpha^2 < 0")
        lhs = E * E - m * m - S * (m + E)
        return lhs - 0.25 * ((2 * n + 1) * a + root) ** 2
    nu = E - m - S
    if nu < 0.0:
        raise _Domain("E - m - Sigma < 0")
    X = _sqrt((m - E + S) * (m + E), "(m - E + Sigma)(m + E) < 0")
    root = math.sqrt(a * a + 4.0 * V0 * nu)
    return X - 0.5 * root + (4 * n + 3) * a / 2.0


def _pt_spin(prob, E, n, verbatim):
    p = prob.potential
    m, Dl, a, V0 = prob.mass, prob.symmetry.constant, p.alpha, p.V0
    if verbatim:
        root = _sqrt(4.0 * V0 * (m + E - Dl) + a * a, "4 V0 (mu + E - Delta) + alpha^2 < 0")
        lhs = E * E + m * m - Dl * (m - E)
        return lhs - 0.25 * ((2 * n + 1) * a + root) ** 2
    mu_s = m + E - Dl
    if mu_s < 0.0:
        raise _Domain("m + E - Delta < 0")
    X = _sqrt(mu_s * (m - E), "(m + E - Delta)(m - E) < 0")
    root = math.sqrt(a * a + 4.0 * V0 * mu_s)
    return X - 0.5 * root + (4 * n + 3) * a / 2.0


def residual(
    prob: BoundProblem,
    E: float,
    *,
    equation: str | None = None,
    paper_verbatim: bool = False,
    n: int | None = None,
):
    """Value of (LHS - RHS) of the eigenvalue equation at trial energy ``E``.

    Returns a float, or a :class:`DomainViolation` when a square-root
    argument is negative.  ``equation`` overrides the default equation id
    (e.g. ``"Eq34"`` on a sigma = 1 problem); ``n`` overrides the level.
    """
    eq = equation or default_equation(prob)
    if eq not in _COMPATIBLE:
        raise ValueError(f"unknown equation id {eq!r}")
    kind, pseudo = _COMPATIBLE[eq]
    if kind != prob.potential.kind or pseudo != prob.symmetry.is_pseudospin:
        raise ValueError(f"{eq} does not apply to a {prob.potential.kind}/{prob.symmetry.kind} problem")
    level = prob.state.n if n is None else n
    E = float(E)
    try:
        if eq == "Eq34":
            return _hyper_pseudo(prob, E, level)
        if eq == "Eq36":
            return _manning_rosen_pseudo(prob, E, level)
        if eq == "Eq39":
            return _hyper_spin(prob, E, level)
        if eq == "Eq41":
            return _manning_rosen_spin(prob, E, level)
        if eq == "Eq45":
            return _morse_pseudo(prob, E, level, paper_verbatim)
        if eq == "Eq48":
            return _morse_spin(prob, E, level, paper_verbatim)
        if eq == "Eq53":
            return _pt_pseudo(prob, E, level, paper_verbatim)
        return _pt_spin(prob, E, level, paper_verbatim)
    except _Domain as exc:
        return DomainViolation(str(exc))
    except ZeroDivisionError:
        return DomainViolation("division by zero")


@dataclass
class SolveReport:
    levels: list
    windows: list = field(default_factory=list)
    roots_before_filter: list = field(default_factory=list)
    touches_boundary: bool = False


def find_roots(f, lo: float, hi: float, cfg: SolverConfig):
    """Roots of ``f`` on ``[lo, hi]`` where ``f`` may return :class:`DomainViolation`.

    Returns ``(roots, windows, touches)``: ``roots`` is a sorted list of
    ``(E, grazing)`` pairs, ``windows`` the sampled real-domain intervals and
    ``touches`` whether the domain reaches either end of the scan.
    """
    grid = np.linspace(lo, hi, cfg.scan_points)
    values = [f(E) for E in grid]
    valid = [not isinstance(v, DomainViolation) for v in values]

    windows = []
    start = None
    for i, ok in enumerate(valid):
        if ok and start is None:
            start = i
        if (not ok or i == len(valid) - 1) and start is not None:
            end = i if ok else i - 1
            windows.append((float(grid[start]), float(grid[end])))
            start = None
    touches = bool(valid[0] or valid[-1])

    def refine(a, b):
        return float(brentq(f, a, b, xtol=cfg.tol, rtol=4 * np.finfo(float).eps, maxiter=cfg.max_iter))

    roots = []
    for i in range(len(grid) - 1):
        if not (valid[i] and valid[i + 1]):
            continue
        va, vb = values[i], values[i + 1]
        if va == 0.0:
            roots.append((float(grid[i]), False))
        elif va * vb < 0.0:
            roots.append((refine(grid[i], grid[i + 1]), False))
    if valid[-1] and values[-1] == 0.0:
        roots.append((float(grid[-1]), False))

    # Domain edges: locate each edge, then look for a root between the last
    # valid sample and the edge itself.
    for i in range(len(grid) - 1):
        if valid[i] == valid[i + 1]:
            continue
        inside, outside = (i, i + 1) if valid[i] else (i + 1, i)
        Ei, Eo = float(grid[inside]), float(grid[outside])
        for _ in range(cfg.max_iter):
            if abs(Eo - Ei) <= 0.5 * cfg.tol:
                break
            mid = 0.5 * (Ei + Eo)
            if isinstance(f(mid), DomainViolation):
                Eo = mid
            else:
                Ei = mid
        v_edge = f(Ei)
        if isinstance(v_edge, DomainViolation):
            continue
        if abs(v_edge) < 10.0 * cfg.tol:
            roots.append((Ei, True))
        elif values[inside] * v_edge < 0.0:
            a, b = sorted((float(grid[inside]), Ei))
            roots.append((refine(a, b), False))

    roots.sort()
    merged = []
    for E0, graze in roots:
        if merged and abs(E0 - merged[-1][0]) <= 10.0 * cfg.tol:
            continue
        merged.append((E0, graze))
    return merged, windows, touches


def solve_detailed(
    prob: BoundProblem,
    cfg: SolverConfig | None = None,
    *,
    equation: str | None = None,
    paper_verbatim: bool = False,
    strict: bool = False,
    select_branch: bool = True,
) -> SolveReport:
    """Scan, bracket and refine every root of the eigenvalue equation.

    The residual is sampled on ``cfg.scan_points`` energies; sign changes
    inside contiguous real-domain windows are refined with Brent's
    bracketing method to ``cfg.tol``.  Roots closer than ``10 * tol`` are
    merged.  The branch rule keeps ``E < 0`` (pseudospin) or ``E > 0``
    (spin) unless ``select_branch`` is false.
    """
    cfg = cfg or SolverConfig()
    eq = equation or default_equation(prob)
    lo, hi = cfg.window(prob)

    def f(E):
        return residual(prob, E, equation=eq, paper_verbatim=paper_verbatim)

    merged, windows, touches = find_roots(f, lo, hi, cfg)

    branch = branch_of(prob)
    levels = []
    for E0, graze in merged:
        if select_branch:
            if branch == "PseudospinNegative" and not E0 < 0.0:
                continue
            if branch == "SpinPositive" and not E0 > 0.0:
                continue
        res = f(E0)
        levels.append(
            EnergyLevel(
                E=E0,
                n=prob.state.n,
                kappa=prob.state.kappa,
                residual=float(res) if not isinstance(res, DomainViolation) else float("nan"),
                branch=branch,
                equation_id=eq,
                grazing=graze,
            )
        )
    if strict and touches and not levels:
        raise BracketTooNarrow(
            f"residual domain reaches the scan boundary [{lo}, {hi}]; widen the window"
        )
    return SolveReport(levels=levels, windows=windows, roots_before_filter=[r for r, _ in merged],
                       touches_boundary=touches)


def solve(prob: BoundProblem, cfg: SolverConfig | None = None, **kwargs) -> list:
    """Bound levels at ``prob.state.n`` sorted by energy (empty if none)."""
    return solve_detailed(prob, cfg, **kwargs).levels
