import math

import numpy as np
import pytest

from nudirac.errors import BracketTooNarrow
from nudirac.oracle import OracleConfig, find_levels
from nudirac.potentials import BoundProblem, Hypergeometric, Morse, PoschlTeller, QuantumState, SymmetryLimit
from nudirac.spectrum import (
    DomainViolation,
    SolverConfig,
    default_equation,
    find_roots,
    residual,
    solve,
    solve_detailed,
)

from conftest import ORACLE_E, SUITE, solved, suite_levels

LEVELS = suite_levels()


@pytest.mark.parametrize("key", sorted(ORACLE_E), ids=lambda k: f"{k[0]}-n{k[1]}")
def test_levels_match_frozen_oracle(key):
    name, n = key
    levels = solved(name)[n]
    assert len(levels) == 1
    assert abs(levels[0].E - ORACLE_E[key]) / abs(ORACLE_E[key]) < 1e-9


def test_every_solved_level_has_a_frozen_oracle_value():
    assert {(name, lv.n) for name, _, lv in LEVELS} == set(ORACLE_E)


@pytest.mark.parametrize("name,prob,level", LEVELS, ids=[f"{n}-{lv.n}" for n, _, lv in LEVELS])
def test_level_record(name, prob, level):
    # brentq stops on |dE| <= tol, so the residual scales with the local slope
    h = 1e-6
    slope = abs(residual(prob, level.E + h) - residual(prob, level.E - h)) / (2 * h)
    assert abs(level.residual) < 1e-10 * max(1.0, slope)
    assert level.equation_id == default_equation(prob)
    assert level.kappa == prob.state.kappa
    assert level.n == prob.state.n
    if prob.symmetry.is_pseudospin:
        assert level.E < 0 and level.branch == "PseudospinNegative"
    else:
        assert level.E > 0 and level.branch == "SpinPositive"


@pytest.mark.parametrize("name", [n for n in SUITE if len(SUITE[n].levels) > 1 and "manning" not in n])
def test_levels_are_strictly_monotone_in_n(name):
    E = [solved(name)[n][0].E for n in SUITE[name].levels]
    d = np.diff(E)
    assert np.all(d > 0) or np.all(d < 0)
    if name.startswith("hyper-pseudospin"):
        # deeper with n: the singular core dominates as the node count grows
        assert np.all(d < 0)
    else:
        assert np.all(d > 0)


def test_zero_potential_has_no_bound_levels():
    for sym in (SymmetryLimit.pseudospin(0.0), SymmetryLimit.spin(0.0)):
        prob = BoundProblem(Hypergeometric(0.0, 0.5, 0.5), sym, 1.0, QuantumState(0, 2))
        assert solve(prob) == []


def test_shallow_morse_pseudospin_has_no_level():
    """V1=4, V2=2, alpha=0.5, C=0, m=1: no binding in the corrected equation,
    confirmed by shooting; the printed squared form has a spurious root."""
    prob = BoundProblem(Morse(4, 2, 0.5), SymmetryLimit.pseudospin(0.0), 1.0, QuantumState(0, 0))
    assert solve(prob) == []
    verbatim = solve(prob, paper_verbatim=True)
    assert len(verbatim) == 1 and verbatim[0].E == pytest.approx(-0.68725651505347163, rel=1e-9)
    assert find_levels(prob, OracleConfig(), 0, solver_cfg=SolverConfig(-3, 3)) == []


def test_hypergeometric_pseudospin_without_binding():
    prob = BoundProblem(Hypergeometric(2, 0.5, 0.25), SymmetryLimit.pseudospin(0.0), 5.0, QuantumState(0, 1))
    assert solve(prob) == []
    assert find_levels(prob, OracleConfig(), 0) == []


def test_manning_rosen_residuals_agree_pointwise():
    rng = np.random.default_rng(11)
    for _ in range(20):
        D, a, m = rng.uniform(0.1, 2), rng.uniform(0.2, 1.0), rng.uniform(0.5, 4)
        k, n = int(rng.integers(1, 4)), int(rng.integers(0, 3))
        for sym, pair in ((SymmetryLimit.pseudospin(rng.uniform(-1, 1)), ("Eq34", "Eq36")),
                          (SymmetryLimit.spin(rng.uniform(-1, 1)), ("Eq39", "Eq41"))):
            prob = BoundProblem(Hypergeometric(D, 1.0, a), sym, m, QuantumState(n, k))
            for E in np.linspace(-3 * m, 3 * m, 41):
                r1, r2 = (residual(prob, E, equation=eq) for eq in pair)
                assert isinstance(r1, DomainViolation) == isinstance(r2, DomainViolation)
                if not isinstance(r1, DomainViolation):
                    assert r1 == pytest.approx(r2, rel=1e-10, abs=1e-10)


def test_domain_violation_is_falsy():
    dv = DomainViolation("x")
    assert not dv
    assert "x" in repr(dv)


def test_residual_rejects_wrong_equation():
    prob = SUITE["morse-spin-a"].problem
    with pytest.raises(ValueError):
        residual(prob, 0.3, equation="Eq34")
    with pytest.raises(ValueError):
        residual(prob, 0.3, equation="Eq99")


def test_solver_config_validation():
    with pytest.raises(ValueError):
        SolverConfig(tol=0)
    with pytest.raises(ValueError):
        SolverConfig(bracket_lo=1, bracket_hi=0)
    with pytest.raises(ValueError):
        SolverConfig(scan_points=1)


def test_find_roots_handles_domain_edges():
    cfg = SolverConfig(scan_points=50, tol=1e-12)

    # a root just inside a domain edge that no sample straddles
    def f(E):
        if E > 0.5:
            return DomainViolation("edge")
        return 0.5 - 1e-5 - E

    roots, windows, touches = find_roots(f, -1.0, 1.0, cfg)
    assert len(roots) == 1 and roots[0][0] == pytest.approx(0.5 - 1e-5, abs=1e-11)
    assert touches and len(windows) == 1

    # a root exactly on the edge is reported as grazing
    def g(E):
        return DomainViolation("edge") if E > 0.5 else 0.5 - E

    roots, _, _ = find_roots(g, -1.0, 1.0, SolverConfig(scan_points=50, tol=1e-10))
    assert len(roots) == 1 and roots[0][1]


def test_strict_mode_flags_truncated_windows():
    prob = SUITE["hyper-spin-k1"].problems()[0]
    with pytest.raises(BracketTooNarrow):
        solve_detailed(prob, SolverConfig(4.9, 4.95), strict=True)
    assert solve_detailed(prob, SolverConfig(4.9, 4.95)).levels == []


def test_branch_filter_can_be_disabled():
    prob = BoundProblem(PoschlTeller(4, 0.5), SymmetryLimit.pseudospin(-5.0), 1.0, QuantumState(0, 1))
    filtered = solve_detailed(prob)
    raw = solve_detailed(prob, select_branch=False)
    assert len(raw.roots_before_filter) >= len(filtered.levels) == 1


def test_sorted_scan_is_deterministic():
    prob = SUITE["morse-spin-b"].problems()[1]
    assert solve(prob, SUITE["morse-spin-b"].solver) == solve(prob, SUITE["morse-spin-b"].solver)
