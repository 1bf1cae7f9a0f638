"""Shooting-method oracle for the decoupled radial equations.

The radial equation ``u'' = U(r; E) u`` is integrated with Numerov's
method on a logarithmic grid ``r = exp(x)``: with ``u = sqrt(r) w`` it
becomes ``w'' = (r^2 U + 1/4) w``, which is regular in ``x`` even when
``U`` has a ``1/r^2`` core.  The start exponent is matched numerically from
the first grid point, so the approximated and exact centrifugal terms are
treated alike.

Levels are bracketed by the node count of the outward solution integrated
to ``r_max`` and refined on the sign change of the normalised Wronskian
between the outward and inward (decaying) solutions at the matching point.
Nothing here uses the closed-form NU results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import LevelAbsent
from .potentials import BoundProblem, centrifugal_approx, kappa_term
from .spectrum import EnergyLevel, SolverConfig, branch_of

__all__ = ["OracleConfig", "ShootResult", "shoot", "find_levels", "find_level"]

_BIG = 1e150


@dataclass(frozen=True)
class OracleConfig:
    r_min: float | None = None
    r_max: float | None = None
    steps: int = 20000
    centrifugal_mode: str = "approx"
    e_tol: float = 1e-9
    auto_rmax: bool = True
    scan_points: int = 200
    max_doublings: int = 3

    def __post_init__(self):
        if self.steps < 1000:
            raise ValueError("steps must be at least 1000")
        if self.centrifugal_mode not in ("approx", "exact"):
            raise ValueError("centrifugal_mode must be 'approx' or 'exact'")
        if self.e_tol <= 0:
            raise ValueError("e_tol must be positive")
        if self.r_min is not None and self.r_max is not None and not self.r_min < self.r_max:
            raise ValueError("r_min must be below r_max")

    def radii(self, alpha: float) -> tuple[float, float]:
        r_min = self.r_min if self.r_min is not None else 1e-4 / alpha
        r_max = self.r_max if self.r_max is not None else 40.0 / alpha
        return r_min, r_max


@dataclass(frozen=True)
class ShootResult:
    node_count: int
    mismatch: float
    r_match: float


class _Grid:
    """Energy-independent pieces of ``r^2 U + 1/4`` on the log grid."""

    def __init__(self, prob: BoundProblem, cfg: OracleConfig, r_max: float | None = None):
        p = prob.potential
        r_min, r_hi = cfg.radii(p.alpha)
        if r_max is not None:
            r_hi = r_max
        self.prob = prob
        self.x = np.linspace(math.log(r_min), math.log(r_hi), cfg.steps + 1)
        self.h = self.x[1] - self.x[0]
        self.r = np.exp(self.x)
        r2 = self.r**2
        kt = kappa_term(prob.symmetry, prob.state.kappa)
        if kt == 0:
            cent = np.zeros_like(self.r)
        elif cfg.centrifugal_mode == "approx":
            cent = centrifugal_approx(kt, p.alpha, self.r)
        else:
            cent = kt / r2
        V = p.value(self.r)
        self.V = V
        self.cent = cent
        self.F0 = r2 * cent + 0.25
        self.R2 = r2
        self.RV = r2 * V
        self.k = self.h * self.h / 12.0

    def coupling(self, E: float) -> tuple[float, float]:
        """``U = cent + a + b V``."""
        prob = self.prob
        m = prob.mass
        c = prob.symmetry.constant
        if prob.symmetry.is_pseudospin:
            mu = m - E + c
            return mu * (m + E), -mu
        mu = m + E - c
        return mu * (m - E), mu

    def f(self, E: float) -> np.ndarray:
        a, b = self.coupling(E)
        return self.F0 + a * self.R2 + b * self.RV

    def U(self, E: float) -> np.ndarray:
        a, b = self.coupling(E)
        return self.cent + a + b * self.V

    def u_inf(self, E: float) -> float:
        a, b = self.coupling(E)
        return a + b * float(self.V[-1]) + float(self.cent[-1])

    def start(self, c):
        return _start(c[0], c[1], self.r[0], self.r[1], self.h)

    def admissible(self, E: float) -> float:
        """Positive when the tail decays and the origin does not swallow the solution."""
        a, b = self.coupling(E)
        core = self.F0[0] + a * self.R2[0] + b * self.RV[0]
        return min(self.u_inf(E), core)

    def match_index(self, E: float) -> int:
        U = self.U(E)
        allowed = np.nonzero(U < 0.0)[0]
        if allowed.size == 0:
            return int(np.argmin(U))
        i_tp = int(allowed[-1])
        uinf = max(self.u_inf(E), 1e-300)
        r_m = self.r[i_tp] + 5.0 / math.sqrt(uinf)
        i = int(np.searchsorted(self.r, r_m))
        return max(2, min(i, int(0.8 * (len(self.r) - 1))))


def _start(c0, c1, r0, r1, h):
    """Regular-solution start ``w = e^{q x} (1 + a1 r)`` from the first two points.

    ``r^2 U + 1/4`` is fitted as ``fL + f1 r`` near the origin; the first-order
    term matters when the two indicial exponents are close.  Works on scalars
    or arrays.
    """
    scale = 12.0 / (h * h)
    fa, fb = c0 * scale, c1 * scale
    f1 = (fb - fa) / (r1 - r0)
    fL = np.maximum(fa - f1 * r0, 0.0)
    q = np.sqrt(fL)
    a1 = f1 / (2.0 * q + 1.0)
    return 1.0 + a1 * r0, np.exp(q * h) * (1.0 + a1 * r1)


def _outward(c, i_stop, start):
    """Numerov from the origin; returns (w[i_stop-1], w[i_stop], nodes)."""
    w0, w1 = (float(v) for v in start)
    nodes = 0
    a0 = 1.0 - c[0]
    a1 = 1.0 - c[1]
    for i in range(1, i_stop):
        a2 = 1.0 - c[i + 1]
        w2 = ((12.0 - 10.0 * a1) * w1 - a0 * w0) / a2
        if w2 * w1 < 0.0:
            nodes += 1
        if abs(w2) > _BIG:
            w1 /= _BIG
            w2 /= _BIG
        w0, w1 = w1, w2
        a0, a1 = a1, a2
    return w0, w1, nodes


def _inward(c, i_stop):
    """Numerov from r_max down to i_stop; returns (w[i_stop], w[i_stop+1], nodes)."""
    N = len(c) - 1
    fN = max(c[N] * 12.0, 0.0)
    w0 = 1e-30
    w1 = w0 * math.exp(math.sqrt(fN))
    nodes = 0
    a0 = 1.0 - c[N]
    a1 = 1.0 - c[N - 1]
    for i in range(N - 1, i_stop, -1):
        a2 = 1.0 - c[i - 1]
        w2 = ((12.0 - 10.0 * a1) * w1 - a0 * w0) / a2
        if w2 * w1 < 0.0:
            nodes += 1
        if abs(w2) > _BIG:
            w1 /= _BIG
            w2 /= _BIG
        w0, w1 = w1, w2
        a0, a1 = a1, a2
    return w1, w0, nodes


def _coeffs(grid: _Grid, E: float) -> list:
    return (grid.k * grid.f(E)).tolist()


def _shoot(grid: _Grid, E: float, i_match: int | None = None) -> ShootResult:
    c = _coeffs(grid, E)
    im = grid.match_index(E) if i_match is None else i_match
    o_prev, o_m, n_out = _outward(c, im, grid.start(c))
    # one more outward step to get w_out[im + 1]
    a0, a1, a2 = 1.0 - c[im - 1], 1.0 - c[im], 1.0 - c[im + 1]
    o_next = ((12.0 - 10.0 * a1) * o_m - a0 * o_prev) / a2
    i_m, i_next, n_in = _inward(c, im)
    wr = o_m * i_next - o_next * i_m
    norm = math.hypot(o_m, o_next) * math.hypot(i_m, i_next)
    return ShootResult(node_count=n_out + n_in, mismatch=wr / norm, r_match=float(grid.r[im]))


def shoot(prob: BoundProblem, E: float, cfg: OracleConfig | None = None) -> ShootResult:
    """Node count and normalised outward/inward Wronskian at trial energy ``E``.

    The mismatch is zero exactly when the regular outward solution joins the
    decaying tail, i.e. at an eigenvalue.
    """
    cfg = cfg or OracleConfig()
    return _shoot(_Grid(prob, cfg), float(E))


def _node_counts(grid: _Grid, Es: np.ndarray) -> np.ndarray:
    """Nodes of the outward solution over the whole grid, vectorised over ``Es``."""
    a = np.empty(len(Es))
    b = np.empty(len(Es))
    for j, E in enumerate(Es):
        a[j], b[j] = grid.coupling(E)
    c = grid.k * (grid.F0[:, None] + grid.R2[:, None] * a[None, :] + grid.RV[:, None] * b[None, :])
    w0, w1 = _start(c[0], c[1], grid.r[0], grid.r[1], grid.h)
    A = 1.0 - c
    nodes = np.zeros(len(Es), dtype=int)
    for i in range(1, len(c) - 1):
        w2 = ((12.0 - 10.0 * A[i]) * w1 - A[i - 1] * w0) / A[i + 1]
        nodes += (w2 * w1 < 0.0)
        if i % 32 == 0:
            s = np.maximum(np.abs(w2), np.abs(w1))
            w1 = w1 / s
            w2 = w2 / s
        w0, w1 = w1, w2
    return nodes


def _node_count_scalar(grid: _Grid, E: float) -> int:
    c = _coeffs(grid, E)
    return _outward(c, len(c) - 1, grid.start(c))[2]


def _refine(grid: _Grid, lo: float, hi: float, tol: float) -> float | None:
    im = grid.match_index(0.5 * (lo + hi))

    def g(E):
        return _shoot(grid, E, im).mismatch

    ga, gb = g(lo), g(hi)
    if ga == 0.0:
        return lo
    if gb == 0.0:
        return hi
    if ga * gb > 0.0:
        return None
    return brentq(g, lo, hi, xtol=tol, rtol=4 * np.finfo(float).eps)


def _energy_window(prob: BoundProblem, grid: _Grid, solver_cfg: SolverConfig | None):
    """Open energy intervals where the tail decays (``u_inf > 0``), edges located by brentq."""
    lo, hi = (solver_cfg or SolverConfig()).window(prob)
    Es = np.linspace(lo, hi, 4001)
    ok = np.array([grid.admissible(E) > 0.0 for E in Es])
    if not ok.any():
        return []
    edges = [lo] if ok[0] else []
    for i in range(len(Es) - 1):
        if ok[i] != ok[i + 1]:
            edges.append(brentq(grid.admissible, Es[i], Es[i + 1], xtol=1e-14, rtol=1e-15))
    if ok[-1]:
        edges.append(hi)
    return [(float(a), float(b)) for a, b in zip(edges[::2], edges[1::2])]


def _levels_on_grid(prob, grid, cfg, solver_cfg):
    found = []
    for lo, hi in _energy_window(prob, grid, solver_cfg):
        # cluster samples at the edges, where shallow levels crowd the threshold
        t = np.linspace(0.0, 1.0, cfg.scan_points)
        Es = lo + (hi - lo) * 0.5 * (1.0 - np.cos(np.pi * t))
        pad = 1e-9 * max(hi - lo, 1.0)
        Es[0] += pad
        Es[-1] -= pad
        Es = Es[np.array([grid.admissible(E) > 0.0 for E in Es])]
        if len(Es) < 2:
            continue
        N = _node_counts(grid, Es)
        stack = [(Es[i], Es[i + 1], int(N[i]), int(N[i + 1])) for i in range(len(Es) - 1) if N[i] != N[i + 1]]
        while stack:
            a, b, na, nb = stack.pop()
            if abs(na - nb) > 1 and b - a > cfg.e_tol:
                mid = 0.5 * (a + b)
                nm = _node_count_scalar(grid, mid)
                stack.append((a, mid, na, nm))
                stack.append((mid, b, nm, nb))
                continue
            if na == nb:
                continue
            E0 = _refine(grid, a, b, cfg.e_tol * 1e-2)
            if E0 is None:
                continue
            found.append((E0, min(na, nb)))
    found.sort()
    return found


def _tail_resolved(grid: _Grid, E: float) -> bool:
    # the decaying tail must fit well inside the box, or the root is a box artefact
    uinf = grid.u_inf(E)
    return uinf > 0.0 and grid.r[-1] * math.sqrt(uinf) >= 15.0


def _polish(prob, cfg, E0, r_max):
    grid = _Grid(prob, cfg, r_max=r_max)
    width = max(1e-7, 1e-6 * abs(E0))
    for _ in range(8):
        E1 = _refine(grid, E0 - width, E0 + width, cfg.e_tol * 1e-2)
        if E1 is not None:
            return E1
        width *= 4.0
    return None


def find_levels(
    prob: BoundProblem,
    cfg: OracleConfig | None = None,
    n_max: int | None = None,
    *,
    solver_cfg: SolverConfig | None = None,
    select_branch: bool = True,
) -> list:
    """All oracle levels with node count ``<= n_max``, sorted by energy.

    ``equation_id`` of the returned levels is ``"oracle"``; ``residual`` is
    the Wronskian mismatch at the refined energy.
    """
    cfg = cfg or OracleConfig()
    grid = _Grid(prob, cfg)
    roots = _levels_on_grid(prob, grid, cfg, solver_cfg)
    branch = branch_of(prob)
    r_max = cfg.radii(prob.potential.alpha)[1]
    levels = []
    for E0, nodes in roots:
        if n_max is not None and nodes > n_max:
            continue
        if select_branch:
            if branch == "PseudospinNegative" and not E0 < 0.0:
                continue
            if branch == "SpinPositive" and not E0 > 0.0:
                continue
        E = E0
        if cfg.auto_rmax:
            rm = r_max
            for _ in range(cfg.max_doublings):
                rm *= 2.0
                E_new = _polish(prob, cfg, E, rm)
                if E_new is None:
                    break
                shift = abs(E_new - E)
                E = E_new
                if shift < 10.0 * cfg.e_tol:
                    break
            final_grid = _Grid(prob, cfg, r_max=rm)
        else:
            final_grid = grid
        if not _tail_resolved(final_grid, E):
            continue
        sr = _shoot(final_grid, E)
        levels.append(
            EnergyLevel(
                E=float(E),
                n=int(sr.node_count),
                kappa=prob.state.kappa,
                residual=float(sr.mismatch),
                branch=branch,
                equation_id="oracle",
            )
        )
    return levels


def find_level(
    prob: BoundProblem,
    cfg: OracleConfig | None = None,
    n: int | None = None,
    *,
    near: float | None = None,
    solver_cfg: SolverConfig | None = None,
) -> EnergyLevel:
    """The oracle level with ``n`` nodes (default ``prob.state.n``).

    When several branch-selected levels share the node count, the one
    closest to ``near`` is returned (lowest energy if ``near`` is None).
    """
    n = prob.state.n if n is None else n
    cands = [lv for lv in find_levels(prob, cfg, n, solver_cfg=solver_cfg) if lv.n == n]
    if not cands:
        raise LevelAbsent(f"no bound level with {n} nodes")
    if near is None:
        return cands[0]
    return min(cands, key=lambda lv: abs(lv.E - near))
