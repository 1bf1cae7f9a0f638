"""The standard validation grid: twelve problems with their scan windows.

Morse wells sit far from the origin (``V1 = D e^{2 a re}``,
``V2 = 2 D e^{a re}``, ``a re >= 4``) so the whole-line closed form is
accurate on the half line.  Pseudospin Morse and Pöschl–Teller bind only
for ``C < -2m``.  The two sigma = 1 problems carry no bound level at all;
they are kept so the solver and the oracle are checked to agree on that.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .potentials import BoundProblem, Hypergeometric, Morse, PoschlTeller, QuantumState, SymmetryLimit
from .spectrum import SolverConfig

__all__ = ["SuiteEntry", "validation_suite", "morse_well"]


@dataclass(frozen=True)
class SuiteEntry:
    name: str
    problem: BoundProblem  # n is a placeholder; see ``levels``
    levels: tuple  # radial indices checked
    solver: SolverConfig

    def problems(self):
        return [self.problem.with_n(n) for n in self.levels]


def morse_well(depth: float, alpha: float, r_e: float) -> Morse:
    """Morse potential with minimum ``-depth`` at ``r_e``."""
    return Morse(depth * math.exp(2.0 * alpha * r_e), 2.0 * depth * math.exp(alpha * r_e), alpha)


def _p(pot, sym, m, kappa):
    return BoundProblem(pot, sym, m, QuantumState(0, kappa))


def validation_suite() -> list:
    ps, sp = SymmetryLimit.pseudospin, SymmetryLimit.spin
    return [
        SuiteEntry("morse-pseudospin-a", _p(morse_well(2.0, 0.5, 8.0), ps(-5.0), 1.0, 1), (0, 1, 2), SolverConfig(-6.0, 6.0)),
        SuiteEntry("morse-pseudospin-b", _p(morse_well(3.0, 0.8, 5.0), ps(-6.0), 2.0, 0), (0, 1), SolverConfig(-9.0, 9.0)),
        SuiteEntry("morse-spin-a", _p(morse_well(2.0, 0.5, 8.0), sp(0.0), 1.0, 0), (1, 2), SolverConfig(-2.0, 2.0)),
        SuiteEntry("morse-spin-b", _p(morse_well(4.0, 0.6, 7.0), sp(0.5), 1.5, -1), (1, 2, 3), SolverConfig(-6.0, 6.0)),
        SuiteEntry("pt-pseudospin", _p(PoschlTeller(4.0, 0.5), ps(-5.0), 1.0, 1), (0, 1), SolverConfig()),
        SuiteEntry("pt-spin", _p(PoschlTeller(6.0, 1.0), sp(1.0), 2.0, 0), (0, 1), SolverConfig()),
        SuiteEntry("hyper-pseudospin-k1", _p(Hypergeometric(0.02, -4.0, 1.0), ps(0.0), 5.0, 1), (0,), SolverConfig()),
        SuiteEntry("hyper-pseudospin-k2", _p(Hypergeometric(0.05, -4.0, 0.5), ps(0.0), 5.0, 2), (0, 1), SolverConfig()),
        SuiteEntry("hyper-spin-k1", _p(Hypergeometric(1.0, 3.0, 0.5), sp(0.0), 1.0, 1), (0, 1, 2), SolverConfig()),
        SuiteEntry("hyper-spin-k2", _p(Hypergeometric(1.0, 3.0, 0.5), sp(0.0), 1.0, 2), (0, 1), SolverConfig()),
        SuiteEntry("manning-rosen-pseudospin", _p(Hypergeometric(0.5, 1.0, 0.5), ps(0.0), 1.0, 2), (0, 1), SolverConfig()),
        SuiteEntry("manning-rosen-spin", _p(Hypergeometric(0.5, 1.0, 0.5), sp(0.0), 1.0, 1), (0, 1), SolverConfig()),
    ]
