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
from typing import Any

import numpy as np
import numpy.typing as npt

from levyx.exceptions import JetOrderError
from .jet import Jet, _SCALARS

class DeltaCombination:
    """
    Finite combination sum_i g_i * delta^(i)(xi) with constant coefficients.

    This is the transform of a constant payoff and of everything the
    expansion recursion produces from it. Multiplication by a smooth function
    phi only needs the jet of phi at xi = 0:
        phi * delta^(j) = sum_{i<=j} (-1)^(j-i) j!/i! c_{j-i} delta^(i)

    Args:
        moments (npt.ArrayLike): g_i with shape (J, *batch)
    """

    __slots__ = ('moments',)
    __array_ufunc__ = None

    def __init__(self, moments:npt.ArrayLike):
        moments = np.asarray(moments, dtype=complex)
        if moments.ndim == 0:
            moments = moments.reshape(1)
        self.moments = moments

    @classmethod
    def dirac(cls, weight:complex=1., shape:tuple[int, ...]=(1,)) -> 'DeltaCombination':
        """Gets weight * delta(xi)"""
        return cls(np.full((1,) + shape, weight, dtype=complex))

    @property
    def order(self) -> int:
        """Highest derivative of delta present"""
        return self.moments.shape[0] - 1

    def derivative(self) -> 'DeltaCombination':
        """Returns the distributional derivative"""
        z = np.zeros((1,) + self.moments.shape[1:], dtype=complex)
        return DeltaCombination(np.concatenate([z, self.moments]))

    def __add__(self, other:Any) -> 'DeltaCombination':
        if not isinstance(other, DeltaCombination):
            return NotImplemented
        a, b = self.moments, other.moments
        n = max(a.shape[0], b.shape[0])
        out = np.zeros((n,) + np.broadcast_shapes(a.shape[1:], b.shape[1:]), dtype=complex)
        out[:a.shape[0]] += a
        out[:b.shape[0]] += b
        return DeltaCombination(out)

    def __neg__(self) -> 'DeltaCombination':
        return DeltaCombination(-self.moments)

    def __mul__(self, other:Any) -> 'DeltaCombination':
        if isinstance(other, Jet):
            J = self.moments.shape[0]
            if other.order < J - 1:
                raise JetOrderError(f'multiplying delta^({J - 1}) needs a jet of order >= {J - 1}, got {other.order}')
            c = other.coeffs
            out = np.zeros((J,) + np.broadcast_shapes(self.moments.shape[1:], c.shape[1:]), dtype=complex)
            for i in range(J):
                for j in range(i, J):
                    out[i] = out[i] + (-1)**(j - i) * (factorial(j) / factorial(i)) * c[j - i] * self.moments[j]
            return DeltaCombination(out)
        if isinstance(other, _SCALARS):
            return DeltaCombination(self.moments * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other:Any) -> 'DeltaCombination':
        if isinstance(other, _SCALARS):
            return DeltaCombination(self.moments / other)
        return NotImplemented

    def pair(self, test:Jet) -> npt.NDArray:
        """
        Returns the integral of this combination against a test function
        given by its jet at 0: sum_i g_i (-1)^i test^(i)(0).
        """
        if test.order < self.order:
            raise JetOrderError(f'pairing delta^({self.order}) needs a test jet of order >= {self.order}, got {test.order}')
        out = np.zeros(np.broadcast_shapes(self.moments.shape[1:], test.coeffs.shape[1:]), dtype=complex)
        for i in range(self.order + 1):
            out = out + (-1)**i * self.moments[i] * test.extract_derivative(i)
        return out

    def __repr__(self) -> str:
        return f'DeltaCombination(order={self.order})'
