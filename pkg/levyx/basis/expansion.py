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

from dataclasses import dataclass
from typing import Any, Callable, Optional

import numpy as np
import numpy.typing as npt
from numpy.polynomial import Polynomial

from levyx.enums import EBasisFamilies
from levyx.jets import Jet
from levyx.models.symbol import Constant, FrozenSymbol

@dataclass(frozen=True)
class BasisPolynomial:
    """
    Basis function B_n as monomial coefficients in x (lowest degree first).

    Args:
        coef: Monomial coefficients
    """
    coef:npt.NDArray
    """Monomial coefficients, lowest degree first"""

    def __post_init__(self):
        coef = np.trim_zeros(np.asarray(self.coef, dtype=float), 'b')
        object.__setattr__(self, 'coef', coef if coef.size else np.zeros(1))

    @classmethod
    def from_polynomial(cls, p:Polynomial) -> 'BasisPolynomial':
        """Gets the basis function of a numpy Polynomial in x"""
        return cls(p.convert(domain=[-1, 1], window=[-1, 1]).coef)

    @property
    def degree(self) -> int:
        return len(self.coef) - 1

    @property
    def is_constant(self) -> bool:
        return self.degree == 0

    def __call__(self, x:npt.ArrayLike) -> npt.NDArray:
        return np.polynomial.polynomial.polyval(x, self.coef)

    def __eq__(self, other:Any) -> bool:
        if not isinstance(other, BasisPolynomial): return NotImplemented
        return self.coef.shape == other.coef.shape and bool(np.all(self.coef == other.coef))

def freeze(func:Callable[[float], float], time_homogeneous:bool) -> Callable[[float], float]:
    """Replaces func by a Constant if it does not depend on t"""
    return Constant(float(func(0.))) if time_homogeneous else func

@dataclass(frozen=True)
class SymbolExpansion:
    """
    Expansion phi(t, x, xi) = sum_n B_n(x) phi_n(t, xi) of a full symbol.

    B_0 is the constant 1 for every family, so phi_0 alone drives the
    leading order term.

    Args:
        family: Basis family
        basis: B_0 ... B_N
        symbols: phi_0 ... phi_N
        points: Expansion point(s), (xbar,) or (xbar1, xbar2)
        shift: Optional. Additive constant M of the two-point family
    """
    family:EBasisFamilies
    """Basis family"""
    basis:tuple[BasisPolynomial, ...]
    """B_0 ... B_N"""
    symbols:tuple[FrozenSymbol, ...]
    """Frozen symbols phi_0 ... phi_N"""
    points:tuple[float, ...]
    """Expansion point(s)"""
    shift:float = 0.
    """Additive constant M of the two-point family"""

    def __post_init__(self):
        if len(self.basis) != len(self.symbols):
            raise ValueError(f'got {len(self.basis)} basis functions but {len(self.symbols)} symbols')
        if len(self.basis) == 0:
            raise ValueError('an expansion needs at least B_0')
        b0 = self.basis[0]
        if not (b0.is_constant and b0.coef[0] == 1.):
            raise ValueError(f'B_0 must be the constant 1, got coefficients {b0.coef}')

    @property
    def order(self) -> int:
        """Highest order N"""
        return len(self.basis) - 1

    @property
    def time_homogeneous(self) -> bool:
        return all(s.time_homogeneous for s in self.symbols)

    def truncate(self, N:int) -> 'SymbolExpansion':
        """Gets the expansion up to order N"""
        if N > self.order:
            raise ValueError(f'cannot truncate an expansion of order {self.order} to order {N}')
        return SymbolExpansion(self.family, self.basis[:N + 1], self.symbols[:N + 1], self.points, self.shift)

    def jet_budget(self, N:Optional[int]=None) -> int:
        """
        Gets the jet order needed for the terms up to order N.

        The order-n term applies B_k(i d/dxi) to the order-(n - k) term, so the
        budget is the largest sum of basis degrees over all compositions of n.
        """
        N = self.order if N is None else N
        best = [0] * (N + 1)
        for n in range(1, N + 1):
            best[n] = max(self.basis[k].degree + best[n - k] for k in range(1, n + 1))
        return best[N]

    def symbol_jets(self, t:float, xi:npt.ArrayLike, K:int) -> list[Jet]:
        """Gets the order-K jets of phi_0 ... phi_N at xi"""
        return [s.jet(t, xi, K) for s in self.symbols]

    def full_symbol(self, t:float, x:float, xi:npt.ArrayLike) -> npt.NDArray:
        """Gets sum_n B_n(x) phi_n(t, xi)"""
        return sum(b(x) * s.evaluate(t, xi) for b, s in zip(self.basis, self.symbols))

_COEFFICIENTS = {'a': 'a', 'gamma': 'gamma', 'jump_multiplier': 'weight'}

def reconstruct(expansion:SymbolExpansion, coefficient:str, x:npt.ArrayLike, t:float=0.) -> npt.NDArray:
    """
    Evaluates the expansion of one model coefficient, sum_n B_n(x) c_n(t).

    Args:
        expansion (SymbolExpansion): Expansion of a model
        coefficient (str): 'a', 'gamma' or 'jump_multiplier'
        x (npt.ArrayLike): Log-prices
        t (float): Optional. Time

    Returns:
        npt.NDArray: The reconstructed coefficient at x
    """
    if coefficient not in _COEFFICIENTS:
        raise ValueError(f"coefficient must be one of {list(_COEFFICIENTS)}, got '{coefficient}'")
    attr = _COEFFICIENTS[coefficient]
    x = np.asarray(x, dtype=float)
    return sum(b(x) * float(getattr(s, attr)(t)) for b, s in zip(expansion.basis, expansion.symbols))
