import math

import numpy as np
import pytest

import pygbc


def test_pfaffian_routes_agree():
    a = np.array([[0.0, 2.0], [-2.0, 0.0]])
    assert pygbc.pfaffian(a) == pytest.approx(2.0, abs=1e-12)
    assert pygbc.pfaffian_berezin(a) == pytest.approx(2.0, abs=1e-12)

    rng = np.random.default_rng(3)
    b = rng.standard_normal((4, 4))
    b = b - b.T
    pf = pygbc.pfaffian(b)
    assert pf**2 == pytest.approx(np.linalg.det(b), rel=1e-10)


def test_presets_and_euler_characteristic():
    assert "torsion-torus" in pygbc.preset_names()
    g = pygbc.load_geometry("conformal-torus")
    assert g.dim == 2 and not g.has_torsion()
    assert pygbc.euler_characteristic(g) == pytest.approx(0.0, abs=1e-8)

    sphere = pygbc.load_geometry("stereographic-sphere")
    # K = 1, sqrt(g) = 4/(1+r^2)^2 at the origin
    x = np.zeros(2)
    assert pygbc.euler_form(sphere, x) == pytest.approx(4.0 / (2 * math.pi), rel=1e-8)
    assert pygbc.scalar_curvature(sphere, x) == pytest.approx(2.0, rel=1e-6)


def test_expression_parser():
    e = pygbc.parse_expression("2*sin(x1)*cos(x2)", 2)
    assert e.evaluate(np.array([math.pi / 2, 0.0])) == pytest.approx(2.0)
    assert pygbc.parse_expression(e.print(), 2).print() == e.print()
    with pytest.raises(Exception):
        pygbc.parse_expression("sin(x3)", 2)


def test_torsion_changes_the_euler_form():
    g = pygbc.load_geometry("torsion-torus")
    x = np.array([2.0, 1.0])
    full = pygbc.euler_form(g, x, "full")
    lc = pygbc.euler_form(g, x, "lc")
    assert abs(lc) < 1e-12
    expected = (0.5 * math.cos(2.0) + 0.5 * math.sin(1.0)) / (2 * math.pi)
    assert full == pytest.approx(expected, rel=1e-6)


def test_mc_estimator_flat_and_deterministic():
    g = pygbc.load_geometry("flat-torus")
    x = np.array([3.0, 3.0])
    est = pygbc.heat_diag_mc(g, 0.25, x, 0.05, 20000, 2)
    target = 1.0 / (2 * math.pi * 0.25)
    assert est["value"][0, 0].real == pytest.approx(target, rel=0.1)
    assert est["excluded"] == 0

    again = pygbc.heat_diag_mc(g, 0.25, x, 0.05, 20000, 2)
    assert np.array_equal(est["value"], again["value"])


def test_heat_profile_small_grid():
    g = pygbc.load_geometry("conformal-torus")
    prof = pygbc.heat_profile(g, 16, [0.4, 0.2], [[5, 9]])
    assert prof["max_imag"] < 1e-8
    assert prof["extrapolated"][0] == pytest.approx(prof["reference"][0], abs=0.01)
