import math

import numpy as np
import pytest

from nudirac.errors import UnsupportedChannel
from nudirac.potentials import (
    BoundProblem,
    Hypergeometric,
    Morse,
    PoschlTeller,
    QuantumState,
    SymmetryLimit,
    VariableMap,
    centrifugal_approx,
    effective_potential,
    evaluate_potential,
    kappa_term,
    to_nu_coefficients,
)


def test_potential_values():
    assert evaluate_potential(Morse(5, 3, 1), 1e-14) == pytest.approx(2.0)
    assert evaluate_potential(PoschlTeller(2, 1), 1e-9) == pytest.approx(-2.0)
    z = math.exp(-1.0)
    hyp = Hypergeometric(4, 1, 0.5)
    assert hyp.D2 == pytest.approx(4.0)
    assert evaluate_potential(hyp, 1.0) == pytest.approx(hyp.D2**2 * (z / (1 - z)) ** 2, rel=1e-14)
    with pytest.raises(ValueError):
        evaluate_potential(hyp, 0.0)


def test_hypergeometric_exponential_form_equals_shifted_coth():
    r = np.linspace(0.05, 8, 300)
    for D, s, a in ((1.3, 0.4, 0.7), (0.6, -1.5, 0.3), (2.0, 2.5, 1.1)):
        v = Hypergeometric(D, s, a).value(r)
        assert np.allclose(v, D * (1 / np.tanh(a * r) - s) ** 2, rtol=1e-12, atol=0)
        assert not np.allclose(v, D * (1 - s / np.tanh(a * r)) ** 2, rtol=1e-3)


def test_manning_rosen_flag():
    assert Hypergeometric(1, 1, 1).manning_rosen
    assert Hypergeometric(1, 1, 1).D1 == 0.0
    assert not Hypergeometric(1, 0.9, 1).manning_rosen


def test_centrifugal_approx():
    assert centrifugal_approx(0, 0.3, 2.0) == 0.0
    assert centrifugal_approx(2, 0.01, 1.0) == pytest.approx(2.0, rel=2e-4)
    v = centrifugal_approx(2, 1.0, 1.0)
    assert v == pytest.approx(2 * 4 * math.exp(-2) / (1 - math.exp(-2)) ** 2, rel=1e-14)
    assert (2.0 - v) / 2.0 == pytest.approx(0.2764, abs=1e-3)


def test_invalid_parameters():
    with pytest.raises(ValueError):
        Hypergeometric(-1, 0, 1)
    with pytest.raises(ValueError):
        Morse(1, 1, 0)
    with pytest.raises(ValueError):
        PoschlTeller(0, 1)
    with pytest.raises(ValueError):
        SymmetryLimit("both")
    with pytest.raises(ValueError):
        QuantumState(-1, 1)
    with pytest.raises(ValueError):
        BoundProblem(Morse(1, 1, 1), SymmetryLimit.spin(), 0.0, QuantumState(0, 0))


def test_channel_rules():
    with pytest.raises(UnsupportedChannel):
        BoundProblem(Hypergeometric(1, 2, 1), SymmetryLimit.spin(), 1, QuantumState(0, 0))
    with pytest.raises(UnsupportedChannel):
        BoundProblem(Morse(1, 1, 1), SymmetryLimit.spin(), 1, QuantumState(0, 1))
    with pytest.raises(UnsupportedChannel):
        BoundProblem(PoschlTeller(1, 1), SymmetryLimit.pseudospin(), 1, QuantumState(0, -1))
    # these channels have a vanishing kappa term
    assert kappa_term(SymmetryLimit.pseudospin(), 1) == 0
    assert kappa_term(SymmetryLimit.spin(), -1) == 0
    assert kappa_term(SymmetryLimit.spin(), 2) == 6
    assert kappa_term(SymmetryLimit.pseudospin(), 2) == 2


def test_quantum_numbers():
    s = QuantumState(0, -1)
    assert (s.j, s.l, s.l_tilde) == (0.5, 0.0, 1.0)
    s = QuantumState(0, 2)
    assert (s.j, s.l, s.l_tilde) == (1.5, 2.0, 1.0)


@pytest.mark.parametrize("kind", ["exp1", "exp2", "negexp2"])
def test_variable_map_round_trip(kind):
    vm = VariableMap(kind, 0.37)
    r = np.geomspace(1e-3, 30, 500)
    assert np.max(np.abs(vm.r(vm.z(r)) - r) / r) < 1e-12
    assert VariableMap(kind, 0.37, odd_degree=True).degree(2) == 5


def _problems():
    ps, sp = SymmetryLimit.pseudospin, SymmetryLimit.spin
    return [
        BoundProblem(Hypergeometric(0.7, -2.0, 0.6), ps(0.4), 2.0, QuantumState(0, 2)),
        BoundProblem(Hypergeometric(0.7, 2.5, 0.6), sp(-0.3), 2.0, QuantumState(0, -3)),
        BoundProblem(Hypergeometric(1.1, 1.0, 0.4), sp(0.0), 1.0, QuantumState(0, 1)),
        BoundProblem(Morse(30.0, 9.0, 0.5), ps(-3.0), 1.0, QuantumState(0, 1)),
        BoundProblem(Morse(30.0, 9.0, 0.5), sp(0.5), 1.0, QuantumState(0, 0)),
        BoundProblem(PoschlTeller(3.0, 0.8), ps(-4.0), 1.0, QuantumState(0, 0)),
        BoundProblem(PoschlTeller(3.0, 0.8), sp(1.0), 1.0, QuantumState(0, -1)),
    ]


@pytest.mark.parametrize("prob", _problems(), ids=lambda p: f"{p.potential.kind}-{p.symmetry.kind}")
def test_coefficients_reproduce_effective_potential(prob):
    """Mapping the NU equation back to r must give the same u'' = U u."""
    r = np.geomspace(0.05, 15, 60)
    for E in (-1.7, -0.3, 0.4, 1.9):
        c, vm = to_nu_coefficients(prob, E)
        z = vm.z(r)
        lam = vm.rate
        U_nu = lam**2 * (c.xi1 * z * z - c.xi2 * z + c.xi3) / (1 - c.alpha3 * z) ** 2
        assert (c.alpha1, c.alpha2) == ((1.0, 1.0) if c.alpha3 else (1.0, 0.0))
        U = effective_potential(prob, E, r)
        assert np.allclose(U_nu, U, rtol=1e-10, atol=1e-10 * np.max(np.abs(U)))


def test_exact_and_approx_centrifugal_modes():
    p = _problems()[0]
    r = np.array([0.01, 0.1, 1.0])
    d = effective_potential(p, -1.0, r, "exact") - effective_potential(p, -1.0, r, "approx")
    assert d[0] == pytest.approx(2 / 1e-4 - centrifugal_approx(2, 0.6, 0.01), rel=1e-12)
    # the gap tends to kterm alpha^2 / 3 at the origin, so relative error vanishes there
    assert d[0] == pytest.approx(2 * 0.36 / 3, rel=1e-3)
    rel = d / (2 / r**2)
    assert rel[0] < rel[1] < rel[2]
    with pytest.raises(ValueError):
        effective_potential(p, -1.0, r, "pekeris")
