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

from math import factorial
from typing import Any, Callable

import numpy as np
import numpy.typing as npt

from levyx.exceptions import JetOrderError, PoleError

MAX_JET_ORDER = 12
"""Highest truncation order a Jet may carry"""
POLE_TOL = 1e-14
"""Modulus below which a leading coefficient is treated as a zero"""

_SCALARS = (int, float, complex, np.number, np.ndarray)

def _idx(n:int, ndim:int) -> npt.NDArray:
    """Column of 1..n broadcastable against coefficient arrays"""
    return np.arange(1, n + 1).reshape((-1,) + (1,) * (ndim - 1))

class Jet:
    """
    Truncated complex Taylor series in xi.

    coeffs[j] holds f^(j)(xi0) / j! for j = 0...order. The trailing axes of
    coeffs are batch axes: one jet object carries the series of the same
    function at many base points at once.

    Args:
        base (npt.ArrayLike): Base point(s) xi0
        coeffs (npt.ArrayLike): Coefficients with shape (order + 1, *base.shape)
    """

    __slots__ = ('base', 'coeffs')
    __array_ufunc__ = None

    def __init__(self, base:npt.ArrayLike, coeffs:npt.ArrayLike):
        coeffs = np.asarray(coeffs, dtype=complex)
        if coeffs.ndim == 0:
            coeffs = coeffs.reshape(1)
        if coeffs.shape[0] - 1 > MAX_JET_ORDER:
            raise JetOrderError(f'jet order must not exceed {MAX_JET_ORDER}, got {coeffs.shape[0] - 1}')
        self.base = np.asarray(base, dtype=complex)
        self.coeffs = coeffs

    @classmethod
    def variable(cls, base:npt.ArrayLike, order:int) -> 'Jet':
        """Gets the jet of the identity xi -> xi at base"""
        base = np.asarray(base, dtype=complex)
        c = np.zeros((order + 1,) + base.shape, dtype=complex)
        c[0] = base
        if order >= 1: c[1] = 1.
        return cls(base, c)

    @classmethod
    def constant(cls, value:Any, base:npt.ArrayLike, order:int) -> 'Jet':
        """Gets the jet of a constant function"""
        base = np.asarray(base, dtype=complex)
        c = np.zeros((order + 1,) + base.shape, dtype=complex)
        c[0] = value
        return cls(base, c)

    @property
    def order(self) -> int:
        """Truncation order"""
        return self.coeffs.shape[0] - 1

    @property
    def value(self) -> npt.NDArray:
        """Function value(s) at the base point(s)"""
        return self.coeffs[0]

    def extract_derivative(self, j:int) -> npt.NDArray:
        """Returns the j-th derivative j! * c_j"""
        if j > self.order:
            raise JetOrderError(f'derivative of order {j} requested from a jet of order {self.order}')
        return factorial(j) * self.coeffs[j]

    def truncate(self, order:int) -> 'Jet':
        """Returns this jet truncated to the given order"""
        if order > self.order:
            raise JetOrderError(f'cannot extend a jet of order {self.order} to order {order}')
        if order == self.order: return self
        return Jet(self.base, self.coeffs[:order + 1])

    def derivative(self) -> 'Jet':
        """Returns the jet of f' (one order shorter)"""
        if self.order == 0:
            raise JetOrderError('cannot differentiate a jet of order 0')
        k = _idx(self.order, self.coeffs.ndim)
        return Jet(self.base, self.coeffs[1:] * k)

    def _pair(self, other:'Jet') -> tuple[npt.NDArray, npt.NDArray]:
        k = min(self.order, other.order) + 1
        return self.coeffs[:k], other.coeffs[:k]

    def __neg__(self) -> 'Jet':
        return Jet(self.base, -self.coeffs)

    def __add__(self, other:Any) -> 'Jet':
        if isinstance(other, Jet):
            a, b = self._pair(other)
            return Jet(self.base, a + b)
        if isinstance(other, _SCALARS):
            c = self.coeffs.copy()
            c[0] = c[0] + other
            return Jet(self.base, c)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other:Any) -> 'Jet':
        if isinstance(other, (Jet,) + _SCALARS):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other:Any) -> 'Jet':
        return (-self) + other

    def __mul__(self, other:Any) -> 'Jet':
        if isinstance(other, Jet):
            a, b = self._pair(other)
            out = np.empty((a.shape[0],) + np.broadcast_shapes(a.shape[1:], b.shape[1:]), dtype=complex)
            for k in range(a.shape[0]):
                out[k] = np.sum(a[:k + 1] * b[k::-1], axis=0)
            return Jet(self.base, out)
        if isinstance(other, _SCALARS):
            return Jet(self.base, self.coeffs * other)
        return NotImplemented

    def __rmul__(self, other:Any) -> 'Jet':
        if isinstance(other, _SCALARS):
            return Jet(self.base, self.coeffs * other)
        return NotImplemented

    def __truediv__(self, other:Any) -> 'Jet':
        if isinstance(other, Jet):
            return self * other.reciprocal()
        if isinstance(other, _SCALARS):
            return Jet(self.base, self.coeffs / other)
        return NotImplemented

    def __rtruediv__(self, other:Any) -> 'Jet':
        return self.reciprocal() * other

    def __pow__(self, p:Any) -> 'Jet':
        if isinstance(p, (int, np.integer)) and p >= 0:
            out = Jet.constant(1., self.base, self.order)
            sq = self
            while p:
                if p & 1: out = out * sq
                p >>= 1
                if p: sq = sq * sq
            return out
        return self.power(p)

    def _check_pole(self, what:str):
        if np.any(np.abs(self.coeffs[0]) < POLE_TOL):
            raise PoleError(f'{what} of a jet whose value vanishes at {self.base}')

    def exp(self) -> 'Jet':
        """Returns exp of this jet"""
        g = self.coeffs
        f = np.empty_like(g)
        f[0] = np.exp(g[0])
        for k in range(1, self.order + 1):
            j = _idx(k, g.ndim)
            f[k] = np.sum(j * g[1:k + 1] * f[k - 1::-1], axis=0) / k
        return Jet(self.base, f)

    def log(self) -> 'Jet':
        """Returns the principal logarithm of this jet"""
        self._check_pole('log')
        f = self.coeffs
        g = np.empty_like(f)
        g[0] = np.log(f[0])
        for k in range(1, self.order + 1):
            s = f[k].copy()
            if k > 1:
                j = _idx(k - 1, f.ndim)
                s -= np.sum(j * g[1:k] * f[k - 1:0:-1], axis=0) / k
            g[k] = s / f[0]
        return Jet(self.base, g)

    def reciprocal(self) -> 'Jet':
        """Returns 1 / this jet"""
        self._check_pole('reciprocal')
        f = self.coeffs
        r = np.empty_like(f)
        r[0] = 1. / f[0]
        for k in range(1, self.order + 1):
            r[k] = -np.sum(f[1:k + 1] * r[k - 1::-1], axis=0) / f[0]
        return Jet(self.base, r)

    def power(self, alpha:complex) -> 'Jet':
        """Returns this jet raised to a real or complex power (principal branch)"""
        self._check_pole('power')
        f = self.coeffs
        p = np.empty_like(f)
        p[0] = f[0]**alpha
        for k in range(1, self.order + 1):
            j = _idx(k, f.ndim)
            p[k] = np.sum(((alpha + 1) * j - k) * f[1:k + 1] * p[k - 1::-1], axis=0) / (k * f[0])
        return Jet(self.base, p)

    def sqrt(self) -> 'Jet':
        """Returns the principal square root of this jet"""
        return self.power(0.5)

    def __repr__(self) -> str:
        return f'Jet(order={self.order}, base={self.base})'

def exp(x:Any) -> Any:
    """exp for jets and arrays"""
    return x.exp() if isinstance(x, Jet) else np.exp(x)

def log(x:Any) -> Any:
    """Principal log for jets and arrays"""
    return x.log() if isinstance(x, Jet) else np.log(x)

def jet_lift(func:Callable[[Any], Any], xi0:npt.ArrayLike, order:int) -> Jet:
    """
    Gets the order-K jet of func at xi0.

    func must be written with operators and the exp/log functions of this
    module so that it accepts a Jet in place of xi.

    Args:
        func (Callable): Analytic function of xi
        xi0 (npt.ArrayLike): Base point(s)
        order (int): Truncation order K

    Raises:
        PoleError: If func hits a pole at xi0

    Returns:
        Jet: The jet of func at xi0
    """
    out = func(Jet.variable(xi0, order))
    if not isinstance(out, Jet):
        out = Jet.constant(out, xi0, order)
    return out

def apply_basis_operator(basis:Any, g:Jet) -> npt.NDArray:
    """
    Applies B(i d/dxi) to the function represented by g and evaluates the
    result at g's base point.

    Args:
        basis (Any): BasisPolynomial or monomial coefficients of B
        g (Jet): Jet of the function

    Raises:
        JetOrderError: If g.order < deg(B)

    Returns:
        npt.NDArray: sum_m b_m i^m g^(m)(xi0)
    """
    coef = np.asarray(getattr(basis, 'coef', basis))
    deg = len(coef) - 1
    if g.order < deg:
        raise JetOrderError(f'operator of degree {deg} needs a jet of order >= {deg}, got {g.order}')
    out = np.zeros_like(g.value)
    for m, b in enumerate(coef):
        if b != 0:
            out = out + b * 1j**m * g.extract_derivative(m)
    return out
