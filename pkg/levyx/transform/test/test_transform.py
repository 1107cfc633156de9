'''
Copyright 2024 the levyx authors
This file is part of levyx.

levyx is free software: you can redistribute it and/or modify it under
the terms of the GNU General Public License as published by the Free
Software Foundation, either version 3 of the License, or (at your option)
any later version.

levyx is distributed in the hope that it will be useful, but WITHOUT ANY
WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS
FOR A PARTICULAR PURPOSE. See the GNU General Public License for more
details: <http://www.gnu.org/licenses/>.
'''

from math import pi, sqrt
from unittest import TestCase

import numpy as np
from scipy import integrate

from levyx.basis import taylor_expand
from levyx.exceptions import ConjugateSymmetryWarning, ContourError, TruncationError
from levyx.expand import ExpansionTermSet
from levyx.models import ModelSpec, merton
from levyx.protocols import IPayoff
from levyx.transform import (CallPayoff, PutPayoff, DeltaPayoff, ConstantPayoff, payoff_from_kind,
                             payoff_transform_eval, contour_nodes, adaptive_truncation, inverse_fourier,
                             quadrature_counter)

def lewis_call(model:ModelSpec, tau:float, k:float) -> float:
    """Call on S_0 = 1 from the characteristic function of a constant coefficient model"""
    def f(u):
        cf = np.exp(tau * model.symbol(0., 0., u - 0.5j))
        return (np.exp(-1j * u * k) * cf).real / (u * u + 0.25)
    val = integrate.quad(f, 0., np.inf, limit=500, epsabs=1e-13, epsrel=1e-12)[0]
    return 1. - np.exp(0.5 * k) / pi * val

def n0_price(model:ModelSpec, payoff, tau:float, contour:float, x:float=0.) -> float:
    ex = taylor_expand(model, x, 0)
    terms = ExpansionTermSet(ex, payoff.transform, tau, 0, contour=contour)
    R = adaptive_truncation(lambda xi: tau * ex.symbols[0].evaluate(0., xi), contour)
    return float(inverse_fourier(terms.on_contour, x, contour, R)[0][0])

class TestPayoffs(TestCase):

    def test_protocol(self):
        for p in (CallPayoff(0.), PutPayoff(0.), DeltaPayoff(0.), ConstantPayoff()):
            self.assertIsInstance(p, IPayoff)
            self.assertIs(payoff_from_kind(p.kind, 0.).__class__, p.__class__)

    def test_delta_transform(self):
        self.assertAlmostEqual(payoff_transform_eval(DeltaPayoff(0.), 0.), 1. / sqrt(2. * pi), delta=1e-15)
        v = payoff_transform_eval(DeltaPayoff(0.3), np.array([1., 2. + 1j]))
        self.assertTrue(np.allclose(v, np.exp(-0.3j * np.array([1., 2. + 1j])) / sqrt(2. * pi)))

    def test_call_transform(self):
        self.assertAlmostEqual(payoff_transform_eval(CallPayoff(0.), -1.5j), 1. / (0.75 * sqrt(2. * pi)),
                               delta=1e-14)
        self.assertAlmostEqual(abs(payoff_transform_eval(CallPayoff(0.), -1.5j)), 0.5319, delta=1e-4)

    def test_transforms_vs_quadrature(self):
        cases = ((CallPayoff(0.2), 2. - 1.5j, (0.2, 60.)), (PutPayoff(-0.1), -1. + 0.5j, (-60., -0.1)))
        for payoff, xi, (lo, hi) in cases:
            f = lambda x: payoff(x) * np.exp(-1j * xi * x) / sqrt(2. * pi)
            re = integrate.quad(lambda x: f(x).real, lo, hi, limit=200, epsabs=1e-13)[0]
            im = integrate.quad(lambda x: f(x).imag, lo, hi, limit=200, epsabs=1e-13)[0]
            self.assertAlmostEqual(payoff_transform_eval(payoff, xi), re + 1j * im, delta=1e-9)

    def test_contours(self):
        self.assertRaises(ContourError, payoff_transform_eval, CallPayoff(0.), np.array([1. - 0.5j]))
        self.assertRaises(ContourError, payoff_transform_eval, PutPayoff(0.), np.array([1. - 0.5j]))
        self.assertRaises(ContourError, payoff_transform_eval, ConstantPayoff(), np.array([0.]))
        payoff_transform_eval(PutPayoff(0.), np.array([1. + 0.5j]))
        payoff_transform_eval(DeltaPayoff(0.), np.array([1. + 7j, 2. - 7j]))
        self.assertEqual(CallPayoff(0.).default_contour(), -1.5)
        self.assertEqual(PutPayoff(0.).default_contour(), 0.5)

    def test_payoff_values(self):
        x = np.log([0.5, 1., 2.])
        self.assertTrue(np.allclose(CallPayoff(0.)(x), [0., 0., 1.]))
        self.assertTrue(np.allclose(PutPayoff(0.)(x), [0.5, 0., 0.]))
        self.assertTrue(np.allclose(ConstantPayoff(2.)(x), 2.))
        self.assertAlmostEqual(PutPayoff(np.log(1.2)).default_value(), 1.2, delta=1e-15)
        self.assertEqual(ConstantPayoff().delta_combination().order, 0)

class TestInverseFourier(TestCase):

    def test_nodes(self):
        nodes, weights = contour_nodes(25., 8, 10.)
        self.assertEqual(nodes.size, 5 * 8)
        self.assertAlmostEqual(np.sum(weights), 50., delta=1e-12)
        self.assertAlmostEqual(np.sum(weights * nodes**2), 2. * 25.**3 / 3., delta=1e-8)
        self.assertRaises(ValueError, contour_nodes, 0.)

    def test_gaussian_self_transform(self):
        g = lambda xr: np.exp(-xr**2 / 2.) / sqrt(2. * pi)
        v, tail = inverse_fourier(g, 0., 0., 40.)
        self.assertAlmostEqual(v, 0.3989422804, delta=1e-10)
        v, _ = inverse_fourier(g, 1.3, 0., 40.)
        self.assertAlmostEqual(v, np.exp(-1.3**2 / 2.) / sqrt(2. * pi), delta=1e-12)

    def test_adaptive_truncation(self):
        growth = lambda xi: 0.25 * (-0.02 * xi**2)
        self.assertEqual(adaptive_truncation(growth, 0.), 80.)
        self.assertEqual(adaptive_truncation(lambda xi: 0. * xi, 0.), 2000.)

    def test_truncation_error(self):
        self.assertRaises(TruncationError, inverse_fourier, lambda xr: 1. / (1. + xr**2), 0., 0., 10.)

    def test_conjugate_symmetry_warning(self):
        with self.assertWarns(ConjugateSymmetryWarning):
            inverse_fourier(lambda xr: 1j * np.exp(-xr**2 / 2.), 0., 0., 40.)

    def test_counter(self):
        quadrature_counter.reset()
        inverse_fourier(lambda xr: np.exp(-xr**2), 0., 0., 20.)
        self.assertEqual(quadrature_counter.calls, 1)
        self.assertEqual(quadrature_counter.nodes, 4 * 64)

    def test_rows_are_inverted_independently(self):
        g = lambda xr: np.stack([np.exp(-xr**2 / 2.), 2. * np.exp(-xr**2 / 2.)]) / sqrt(2. * pi)
        v, tail = inverse_fourier(g, 0., 0., 40.)
        self.assertEqual(v.shape, (2,))
        self.assertAlmostEqual(v[1], 2. * v[0], delta=1e-14)

class TestConstantCoefficientPrices(TestCase):

    def setUp(self):
        self.model = merton()

    def test_call_vs_characteristic_function(self):
        for k in (-0.1, 0., 0.2):
            known = lewis_call(self.model, 0.25, k)
            self.assertAlmostEqual(n0_price(self.model, CallPayoff(k), 0.25, -1.5), known, delta=1e-8)

    def test_contour_invariance(self):
        a = n0_price(self.model, CallPayoff(0.1), 0.5, -1.25)
        b = n0_price(self.model, CallPayoff(0.1), 0.5, -2.)
        self.assertAlmostEqual(a, b, delta=1e-7 * abs(a))

    def test_put_call_parity(self):
        for k in (-0.2, 0.15):
            call = n0_price(self.model, CallPayoff(k), 0.5, -1.5)
            put = n0_price(self.model, PutPayoff(k), 0.5, 0.5)
            self.assertAlmostEqual(call - put, 1. - np.exp(k), delta=1e-8)

    def test_density_mass(self):
        ys, wy = contour_nodes(3., 32, 0.5)
        for gamma in (0., 0.05):
            model = merton(gamma=gamma)
            p = np.array([n0_price(model, DeltaPayoff(y), 1., 0.) for y in ys])
            self.assertAlmostEqual(p @ wy, np.exp(-gamma), delta=1e-6)
            self.assertTrue(np.all(p > -1e-12))
