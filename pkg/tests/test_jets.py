"""Taylor-jet arithmetic against independently known series."""

import math

import numpy as np
import pytest

from ruledkit import jets
from ruledkit.jets import Jet, JetVec, compose, fd_derivative, fd_jet, invert


def test_variable_and_constant():
    x = Jet.variable(2.0, 4)
    assert x.value == 2.0 and x.c[1] == 1.0
    c = Jet.constant(5.0, 3)
    assert np.allclose(c.c, [5, 0, 0, 0])


def test_polynomial_jet_matches_binomial_shift():
    # p(s) = s^3 at s0 = 2: coefficients (8, 12, 6, 1)
    p = jets.polyval([0, 0, 0, 1], Jet.variable(2.0, 3))
    assert np.allclose(p.c, [8, 12, 6, 1])


def test_division_and_sqrt():
    x = Jet.variable(0.0, 6)
    geo = 1 / (1 - x)
    assert np.allclose(geo.c, np.ones(7))
    s = (1 + x).sqrt()
    # binomial series for sqrt(1+h)
    want = [1, 0.5, -1 / 8, 1 / 16, -5 / 128, 7 / 256, -21 / 1024]
    assert np.allclose(s.c, want)


def test_sincos_exp_series():
    x = Jet.variable(0.0, 7)
    s, c = jets.sincos(x)
    assert np.allclose(s.c, [0, 1, 0, -1 / 6, 0, 1 / 120, 0, -1 / 5040])
    assert np.allclose(c.c, [1, 0, -1 / 2, 0, 1 / 24, 0, -1 / 720, 0])
    e = jets.exp(x)
    assert np.allclose(e.c, [1 / math.factorial(k) for k in range(8)])


def test_sincos_at_nonzero_base():
    x0 = 0.83
    s, c = jets.sincos(Jet.variable(x0, 5))
    ders_s = s.derivatives()
    assert np.allclose(ders_s, [np.sin(x0), np.cos(x0), -np.sin(x0), -np.cos(x0), np.sin(x0), np.cos(x0)])
    assert np.allclose((s * s + c * c).c, [1, 0, 0, 0, 0, 0], atol=1e-15)


def test_compose_and_invert():
    x = Jet.variable(0.0, 7)
    s = jets.sin(x)
    # sin(arcsin(h)) = h
    w = invert(s)
    assert np.allclose(w.c, [0, 1, 0, 1 / 6, 0, 3 / 40, 0, 15 / 336])
    back = compose(s, w)
    assert np.allclose(back.c, [0, 1, 0, 0, 0, 0, 0, 0], atol=1e-14)


def test_compose_requires_vanishing_inner():
    f = Jet.variable(0.0, 3)
    with pytest.raises(ValueError):
        compose(f, Jet.constant(1.0, 3))


def test_deriv_antideriv():
    x = Jet.variable(0.0, 5)
    f = jets.exp(x)
    assert np.allclose(f.deriv().c, f.c[:5] * 0 + f.deriv().c)
    assert np.allclose(f.deriv().antideriv(1.0).c, f.c)


def test_jetvec_dot_cross_norm():
    s = Jet.variable(0.3, 5)
    sn, cs = jets.sincos(s)
    v = JetVec.from_jets(cs, sn, Jet.constant(0.0, 5))
    assert np.allclose(v.dot(v).c, [1, 0, 0, 0, 0, 0], atol=1e-14)
    w = v.deriv()
    # unit circle: v x v' = e3
    cr = v.truncate(4).cross(w)
    assert np.allclose(cr.c[2], [1, 0, 0, 0, 0], atol=1e-14)
    assert np.allclose(v.norm().c, [1, 0, 0, 0, 0, 0], atol=1e-14)


def test_fd_derivative_matches_analytic():
    # accuracy degrades with the order; the jet contract promises rough
    # derivatives only, analytic jets are the preferred supply
    tols = {1: 1e-12, 2: 1e-10, 4: 1e-7, 6: 1e-5, 8: 1e-3}
    refs = {1: np.cos(0.4), 2: -np.sin(0.4), 4: np.sin(0.4), 6: -np.sin(0.4), 8: np.sin(0.4)}
    for m, want in refs.items():
        got = fd_derivative(np.sin, 0.4, m)
        assert abs(got - want) < tols[m] * max(1, abs(want)), (m, got, want)


def test_fd_jet_low_orders_tight():
    jet = fd_jet(np.exp, 0.2, 4)
    want = np.exp(0.2)
    ders = jet.derivatives()
    for k in range(5):
        assert abs(ders[k] - want) < 1e-6 * want
