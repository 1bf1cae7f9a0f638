"""Dirac bound states under exact spin and pseudospin symmetry, by the
parametric Nikiforov-Uvarov method, with a shooting oracle for checks."""

from .errors import (
    LevelAbsent,
    NegativeDiscriminant,
    NoRootFound,
    NonNormalizable,
    NuDiracError,
    QuadratureError,
    UnsupportedChannel,
)
from .nu import NuCoefficients, derive_parameters, quantization_residual, wavefunction_form
from .oracle import OracleConfig, find_level, find_levels, shoot
from .potentials import (
    BoundProblem,
    Hypergeometric,
    Morse,
    PoschlTeller,
    QuantumState,
    SymmetryLimit,
    effective_potential,
    to_nu_coefficients,
)
from .special import PolynomialKind, integrate, jacobi_eval, laguerre_eval
from .spectrum import EnergyLevel, SolverConfig, solve
from .suite import validation_suite

__version__ = "0.1.0"
