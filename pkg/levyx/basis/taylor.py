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

import logging
from dataclasses import dataclass
from math import factorial

from numpy.polynomial import Polynomial

from levyx.enums import EBasisFamilies
from levyx.models.coefficient import Coefficient
from levyx.models.model_spec import ModelSpec
from levyx.models.symbol import FrozenSymbol
from .expansion import BasisPolynomial, SymbolExpansion, freeze

logger = logging.getLogger(__name__)

@dataclass(frozen=True)
class _TaylorCoefficient:
    """t -> d^n c / dx^n (t, xbar) / n!"""
    coefficient:Coefficient
    xbar:float
    n:int
    finite_differences:bool

    def __call__(self, t:float) -> float:
        d = self.coefficient.derivative(t, self.xbar, self.n, self.finite_differences)
        return d / factorial(self.n)

def taylor_expand(model:ModelSpec, xbar:float, N:int) -> SymbolExpansion:
    """
    Expands the symbol in powers of (x - xbar):
        B_n(x) = (x - xbar)^n,  a_n = d^n a / dx^n (t, xbar) / n!
    and gamma_n, nu_n likewise.

    Args:
        model (ModelSpec): Model
        xbar (float): Expansion point
        N (int): Highest order

    Raises:
        ConfigurationError: If a coefficient has no analytic derivatives and
            the model does not allow finite differences

    Returns:
        SymbolExpansion
    """
    if N < 0:
        raise ValueError(f'N must be >= 0, got {N}')
    fd = model.finite_differences
    shift = Polynomial([-xbar, 1.])
    basis, symbols = [], []
    for n in range(N + 1):
        basis.append(BasisPolynomial.from_polynomial(shift**n))
        a, g, w = (freeze(_TaylorCoefficient(c, xbar, n, fd), c.time_homogeneous)
                   for c in (model.a, model.gamma, model.jump_multiplier))
        symbols.append(FrozenSymbol(a, g, w, model.measure, model.time_homogeneous))
    logger.debug('Taylor expansion of %s at xbar=%g up to order %d', model.name, xbar, N)
    return SymbolExpansion(EBasisFamilies.TAYLOR, tuple(basis), tuple(symbols), (xbar,))
