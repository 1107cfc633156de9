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

from functools import reduce
from operator import add
from typing import Any, Optional

from levyx.exceptions import JetOrderError
from levyx.jets import Jet

class TermPolynomial:
    """
    Polynomial sum_j c_j s^j in the time variable s whose coefficients are
    carriers in xi: Jets at contour points, or DeltaCombinations for the
    constant payoff.

    It represents u(s, xi) = exp(s phi_0(xi)) P(s, xi) by P alone. The xi
    derivative of u then acts on P as D = d/dxi + s phi_0'(xi).

    Args:
        coeffs (list): Carriers c_0 ... c_d
        dphi0 (Jet): Jet of phi_0' at the base point(s), None if no derivative budget is left
    """

    __slots__ = ('coeffs', 'dphi0')

    def __init__(self, coeffs:list[Any], dphi0:Optional[Jet]):
        if not coeffs:
            raise ValueError('a TermPolynomial needs at least one coefficient')
        self.coeffs = list(coeffs)
        self.dphi0 = dphi0

    @property
    def degree(self) -> int:
        """Degree in s"""
        return len(self.coeffs) - 1

    def derivative(self) -> 'TermPolynomial':
        """Returns D P = dP/dxi + s phi_0' P"""
        if self.dphi0 is None:
            raise JetOrderError('no derivative budget left for phi_0\'')
        c = self.coeffs
        out = []
        for j in range(len(c) + 1):
            parts = []
            if j < len(c): parts.append(c[j].derivative())
            if j >= 1: parts.append(c[j - 1] * self.dphi0)
            out.append(reduce(add, parts))
        return TermPolynomial(out, self.dphi0)

    def __mul__(self, other:Any) -> 'TermPolynomial':
        return TermPolynomial([c * other for c in self.coeffs], self.dphi0)

    def __add__(self, other:'TermPolynomial') -> 'TermPolynomial':
        if not isinstance(other, TermPolynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b): a, b = b, a
        return TermPolynomial([a[j] + b[j] if j < len(b) else a[j] for j in range(len(a))], self.dphi0)

    def zero(self) -> 'TermPolynomial':
        """Returns the zero polynomial with this polynomial's carrier type"""
        return TermPolynomial([self.coeffs[0] * 0.], self.dphi0)

    def integrate(self) -> 'TermPolynomial':
        """Returns int_0^s P(r) dr, exact in s"""
        c = self.coeffs
        return TermPolynomial([c[0] * 0.] + [c[j] / (j + 1) for j in range(len(c))], self.dphi0)

    def apply_operator(self, basis:Any) -> 'TermPolynomial':
        """Returns B(iD) P = sum_m b_m i^m D^m P"""
        coef = getattr(basis, 'coef', basis)
        out, cur = None, self
        for m, b in enumerate(coef):
            if m: cur = cur.derivative()
            if b != 0:
                term = cur * (b * 1j**m)
                out = term if out is None else out + term
        return self.zero() if out is None else out

    def __call__(self, s:float) -> Any:
        """Evaluates the polynomial at s (Horner)"""
        out = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            out = out * s + c
        return out

    def __repr__(self) -> str:
        return f'TermPolynomial(degree={self.degree}, carrier={type(self.coeffs[0]).__name__})'
