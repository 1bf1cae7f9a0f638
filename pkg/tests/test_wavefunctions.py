import dataclasses

import numpy as np
import pytest
from scipy.integrate import simpson

from nudirac import wavefunctions as wf
from nudirac.errors import NonNormalizable
from nudirac.special import PolynomialKind

from conftest import suite_levels

LEVELS = suite_levels()
IDS = [f"{n}-{lv.n}" for n, _, lv in LEVELS]


@pytest.fixture(scope="module")
def built():
    return {(name, lv.n): wf.build(p, lv) for name, p, lv in LEVELS}


@pytest.mark.parametrize("name,prob,level", LEVELS, ids=IDS)
def test_closed_form_solves_radial_equation(built, name, prob, level):
    w = built[(name, level.n)]
    assert wf.ode_residual(w, prob) < 1e-5
    assert wf.node_count(w) == level.n


@pytest.mark.parametrize("name,prob,level", LEVELS, ids=IDS)
def test_normalisation_and_sign(built, name, prob, level):
    w = built[(name, level.n)]
    # independent check: composite Simpson on a dense grid
    r = np.linspace(w.cutoff * 1e-7, w.cutoff, 200001)
    assert simpson(wf.evaluate(w, r) ** 2, x=r) == pytest.approx(1.0, abs=1e-6)
    small = r[np.abs(wf.evaluate(w, r)) > 1e-6][0]
    assert wf.evaluate(w, small) > 0
    assert w.component == ("LowerG" if prob.symmetry.is_pseudospin else "UpperF")


@pytest.mark.parametrize("name,prob,level", LEVELS, ids=IDS)
def test_boundary_behaviour(built, name, prob, level):
    w = built[(name, level.n)]
    peak = np.max(np.abs(wf.evaluate(w, np.linspace(1e-3, w.cutoff, 4000))))
    assert abs(wf.evaluate(w, 3 * w.cutoff)) < 1e-12 * peak
    assert abs(wf.evaluate(w, 1e-9)) < 1e-2 * peak


@pytest.mark.parametrize("name,prob,level", LEVELS[::3], ids=IDS[::3])
def test_residual_is_sensitive_to_energy(built, name, prob, level):
    w = built[(name, level.n)]
    base = wf.ode_residual(w, prob)
    assert wf.ode_residual(w, prob, E=level.E * 1.05) >= 10 * base


@pytest.mark.parametrize("name,prob,level", LEVELS, ids=IDS)
def test_explicit_forms_match_nu_forms(built, name, prob, level):
    w = built[(name, level.n)]
    pf = wf.printed_form(prob, level.E, level.n)
    f = w.form
    assert f.variable_exponent == pytest.approx(pf.s, rel=1e-9)
    assert f.edge_factor == pytest.approx(pf.edge, rel=1e-9, abs=1e-12)
    assert f.polynomial.family == pf.polynomial.family
    assert f.polynomial.degree == pf.polynomial.degree
    assert f.polynomial.a == pytest.approx(pf.polynomial.a, rel=1e-9, abs=1e-12)
    if pf.polynomial.family == "jacobi":
        assert f.polynomial.b == pytest.approx(pf.polynomial.b, rel=1e-9, abs=1e-12)
    else:
        assert f.arg_scale == pytest.approx(pf.arg_scale, rel=1e-9)
    r = np.linspace(0.01, w.cutoff, 300)
    alt = wf.from_printed(prob, level, pf)
    assert np.allclose(wf.evaluate(alt, r), wf.evaluate(w, r), rtol=1e-8, atol=1e-10)


def test_zero_norm_rejected(built):
    name, prob, lv = LEVELS[0]
    w = dataclasses.replace(built[(name, lv.n)], norm=0.0)
    with pytest.raises(ValueError):
        wf.ode_residual(w, prob)


def test_non_decaying_form_rejected():
    name, prob, lv = LEVELS[0]
    with pytest.raises(NonNormalizable):
        wf.from_printed(prob, lv, wf.PrintedForm(-0.1, 1.0, PolynomialKind("jacobi", 0, 0.0, 0.0)))


def test_evaluate_rejects_nonpositive_radius(built):
    name, _, lv = LEVELS[0]
    with pytest.raises(ValueError):
        wf.evaluate(built[(name, lv.n)], 0.0)


def test_self_overlap_is_one(built):
    name, _, lv = next(t for t in LEVELS if t[0] == "morse-spin-b")
    w = built[(name, lv.n)]
    assert wf.overlap(w, w) == pytest.approx(1.0, abs=1e-8)


def test_hypergeometric_pseudospin_printed_jacobi_parameter_fails():
    """The product form of the first Jacobi parameter does not solve the equation."""
    worst = 0.0
    for name, prob, lv in LEVELS:
        if name.startswith("hyper-pseudospin") and lv.n > 0:
            pf = wf.printed_form(prob, lv.E, lv.n, paper_verbatim=True)
            worst = max(worst, wf.ode_residual(wf.from_printed(prob, lv, pf), prob))
    assert worst > 1e-2
