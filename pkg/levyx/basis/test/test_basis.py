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

import warnings
from unittest import TestCase

import numpy as np

from levyx.basis import (taylor_expand, two_point_taylor_expand, hermite_expand, hermite_basis,
                         hermite_coefficients, build_expansion, reconstruct)
from levyx.enums import EBasisFamilies
from levyx.exceptions import ConfigurationError, UnboundedCoefficientWarning, UnsupportedFormError
from levyx.models import Coefficient, GaussianJumps, ModelSpec, cev_gauss, cev_vg, coefficient_from_expression, merton

def profile_model(expr:str, A:float=0.5) -> ModelSpec:
    return ModelSpec.proportional(coefficient_from_expression(expr), A=A)

class TestTaylor(TestCase):

    def setUp(self):
        with warnings.catch_warnings():
            warnings.simplefilter('ignore', UnboundedCoefficientWarning)
            self.cev = cev_gauss()

    def test_constant_coefficients(self):
        ex = taylor_expand(merton(gamma=0.05), 0., 4)
        self.assertFalse(ex.symbols[0].is_zero)
        self.assertAlmostEqual(ex.symbols[0].coefficients(0.)[1], 0.05, delta=1e-16)
        for s in ex.symbols[1:]:
            self.assertTrue(s.is_zero)

    def test_cev_coefficients(self):
        ex = taylor_expand(self.cev, 0., 3)
        a0, g0, w0 = ex.symbols[0].coefficients(0.)
        a1, g1, w1 = ex.symbols[1].coefficients(0.)
        self.assertAlmostEqual(a0, 0.02, delta=1e-16)
        self.assertAlmostEqual(a1, -0.03, delta=1e-15)
        self.assertAlmostEqual(w1, -1.5, delta=1e-15)
        self.assertAlmostEqual(ex.symbols[2].coefficients(0.)[0], 0.02 * 1.5**2 / 2, delta=1e-15)
        self.assertEqual(g0, 0.)

    def test_basis(self):
        ex = taylor_expand(self.cev, 0.25, 3)
        x = np.linspace(-1., 1., 9)
        for n, b in enumerate(ex.basis):
            self.assertEqual(b.degree, n)
            self.assertTrue(np.allclose(b(x), (x - 0.25)**n, rtol=1e-14, atol=1e-15))
            self.assertAlmostEqual(b(0.25), float(n == 0), delta=1e-15)

    def test_polynomial_reproduction(self):
        model = ModelSpec(a=coefficient_from_expression('2 + 0.1*x + 0.05*x**3'))
        x = np.linspace(-2., 2., 21)
        ex = taylor_expand(model, 0.3, 3)
        self.assertTrue(np.allclose(reconstruct(ex, 'a', x), model.a(0., x), rtol=0, atol=1e-12))
        ex = taylor_expand(model, 0.3, 2)
        self.assertFalse(np.allclose(reconstruct(ex, 'a', x), model.a(0., x), rtol=0, atol=1e-6))

    def test_every_order_vanishes_at_minus_i(self):
        ex = taylor_expand(self.cev, 0., 4)
        for s in ex.symbols:
            self.assertAlmostEqual(abs(s.evaluate(0., -1j)), 0., delta=1e-15)

    def test_full_symbol(self):
        ex = taylor_expand(self.cev, 0., 4)
        xi = np.linspace(-5., 5., 11) - 0.5j
        self.assertTrue(np.allclose(ex.full_symbol(0., 0., xi), self.cev.symbol(0., 0., xi), rtol=1e-14))

    def test_jet_budget(self):
        self.assertEqual(taylor_expand(self.cev, 0., 3).jet_budget(), 3)

class TestTwoPoint(TestCase):

    def test_square(self):
        ex = two_point_taylor_expand(profile_model('x**2'), -1., 1., 0., 2)
        x = np.linspace(-3., 3., 13)
        self.assertTrue(np.allclose(ex.basis[1](x), 1., rtol=0, atol=1e-14))
        self.assertTrue(np.allclose(ex.basis[2](x), x**2 - 1., rtol=0, atol=1e-14))
        self.assertTrue(np.allclose(reconstruct(ex, 'a', x), 0.5 * x**2, rtol=0, atol=1e-12))

    def test_affine(self):
        ex = two_point_taylor_expand(profile_model('1 + 0.2*x'), -0.5, 0.5, 0., 3)
        x = np.linspace(-30., 30., 13)
        self.assertTrue(np.allclose(reconstruct(ex, 'a', x), 0.5 * (1 + 0.2 * x), rtol=0, atol=1e-12))
        for b in ex.basis[2:]:
            self.assertTrue(np.allclose(b(x), 0., atol=1e-14))

    def test_polynomial_reproduction(self):
        # degree 2N - 1 = 3, any shift M
        model = profile_model('2 + 0.1*x + 0.05*x**3')
        x = np.linspace(-2., 2., 21)
        for M in (0., 2., -1.3):
            ex = two_point_taylor_expand(model, -0.4, 0.6, M, 2)
            self.assertTrue(np.allclose(reconstruct(ex, 'a', x), model.a(0., x), rtol=0, atol=1e-12))
        model = profile_model('1 + x**4')
        ex = two_point_taylor_expand(model, -1., 1., 0., 3)
        self.assertTrue(np.allclose(reconstruct(ex, 'a', x), model.a(0., x), rtol=0, atol=1e-12))

    def test_exponential_profile(self):
        with warnings.catch_warnings():
            warnings.simplefilter('ignore', UnboundedCoefficientWarning)
            model = cev_vg()
        ex = build_expansion(model, EBasisFamilies.TWO_POINT, 2, xbar=0., delta=0.5)
        self.assertEqual(ex.points, (-0.5, 0.5))
        self.assertEqual(ex.shift, 1.)
        f = lambda x: np.exp(-1.5 * x)
        rec = lambda x: reconstruct(ex, 'jump_multiplier', x)
        self.assertAlmostEqual(rec(-0.5), f(-0.5), delta=1e-13)
        self.assertAlmostEqual(rec(0.5), f(0.5), delta=1e-13)
        # cubic Hermite interpolation error at the midpoint
        self.assertAlmostEqual(rec(0.), 0.98632, delta=1e-4)
        self.assertEqual(ex.jet_budget(), 3)
        self.assertEqual([b.degree for b in ex.basis], [0, 1, 3])

    def test_symbols(self):
        with warnings.catch_warnings():
            warnings.simplefilter('ignore', UnboundedCoefficientWarning)
            model = cev_gauss()
        ex = two_point_taylor_expand(model, -0.5, 0.5, 2., 2)
        self.assertTrue(np.allclose(ex.symbols[0].coefficients(0.), (0.04, 0., 2.), rtol=1e-15))
        self.assertTrue(np.allclose(ex.symbols[1].coefficients(0.), (0.02, 0., 1.), rtol=1e-15))
        self.assertIs(ex.symbols[2].measure, model.measure)

    def test_invalid(self):
        model = ModelSpec(a=Coefficient.constant(0.02))
        self.assertRaises(UnsupportedFormError, two_point_taylor_expand, model, -0.5, 0.5, 1., 2)
        self.assertRaises(ValueError, two_point_taylor_expand, profile_model('x**2'), 0.5, 0.5, 1., 2)

class TestHermite(TestCase):

    def test_orthonormality(self):
        u, w = np.polynomial.hermite.hermgauss(16)
        xbar = 0.3
        basis = hermite_basis(xbar, 8)
        gram = np.array([[np.sum(w * bm(xbar + u) * bn(xbar + u)) for bn in basis] for bm in basis])
        self.assertTrue(np.allclose(gram, np.eye(9), rtol=0, atol=1e-10))

    def test_constant(self):
        c = hermite_coefficients(lambda x: np.ones_like(x), 0., 4)
        self.assertAlmostEqual(c[0], np.pi**0.25, delta=1e-14)
        self.assertTrue(np.allclose(c[1:], 0., atol=1e-14))
        self.assertAlmostEqual(c[0] * hermite_basis(0., 0)[0](0.7), 1., delta=1e-14)
        ex = hermite_expand(ModelSpec(a=Coefficient.constant(0.02)), 0., 4)
        self.assertTrue(np.allclose(reconstruct(ex, 'a', np.linspace(-2, 2, 5)), 0.02, rtol=1e-14))
        self.assertEqual(ex.basis[0].coef[0], 1.)

    def test_polynomial_reproduction(self):
        model = ModelSpec(a=coefficient_from_expression('2 + 0.1*x + 0.05*x**3'))
        ex = hermite_expand(model, 0.2, 3)
        x = np.linspace(-2., 2., 21)
        self.assertTrue(np.allclose(reconstruct(ex, 'a', x), model.a(0., x), rtol=0, atol=1e-12))
        self.assertEqual(ex.jet_budget(), 3)

    def test_worse_than_taylor_near_center(self):
        with warnings.catch_warnings():
            warnings.simplefilter('ignore', UnboundedCoefficientWarning)
            model = cev_gauss()
        taylor = taylor_expand(model, 0., 4)
        herm = hermite_expand(model, 0., 4)
        for x in (-0.5, 0.5):
            f = model.jump_multiplier(0., x)
            err_t = abs(reconstruct(taylor, 'jump_multiplier', x) - f)
            err_h = abs(reconstruct(herm, 'jump_multiplier', x) - f)
            self.assertLess(err_t, 3e-3)
            self.assertGreater(err_h, 10 * err_t)

    def test_quadrature_order(self):
        model = ModelSpec(a=Coefficient.constant(0.02))
        self.assertRaises(ConfigurationError, hermite_expand, model, 0., 4, 4)
        hermite_expand(model, 0., 4, 5)
