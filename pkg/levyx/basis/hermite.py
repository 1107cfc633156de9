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

import numpy as np
import numpy.typing as npt
from numpy.polynomial import Polynomial, hermite
from scipy.special import factorial2

from levyx.enums import EBasisFamilies
from levyx.exceptions import ConfigurationError
from levyx.models.coefficient import Coefficient
from levyx.models.model_spec import ModelSpec
from levyx.models.symbol import FrozenSymbol
from .expansion import BasisPolynomial, SymbolExpansion, freeze

logger = logging.getLogger(__name__)

def hermite_basis(xbar:float, N:int) -> list[Polynomial]:
    """
    Gets the Hermite functions
        B_n(x) = (-1)^n H_n(x - xbar) / sqrt((2n)!! sqrt(pi)),
    orthonormal under the weight exp(-(x - xbar)^2). H_n are the physicists'
    Hermite polynomials, (2n)!! = 2^n n!.
    """
    shift = Polynomial([-xbar, 1.])
    out = []
    for n in range(N + 1):
        h = Polynomial(hermite.herm2poly([0.] * n + [1.]))
        norm = np.sqrt(factorial2(2 * n, exact=True) * np.sqrt(np.pi))
        out.append((-1)**n * h(shift) / norm)
    return out

def hermite_coefficients(func, xbar:float, N:int, quad_order:int=32) -> npt.NDArray:
    """
    Gets the projections <func, B_n> under exp(-(x - xbar)^2) for n = 0...N
    by Gauss-Hermite quadrature.

    Args:
        func: x -> g(x), vectorized
        xbar (float): Center
        N (int): Highest order
        quad_order (int): Optional. Number of Gauss-Hermite nodes, >= N + 1

    Raises:
        ConfigurationError: If quad_order < N + 1 or a projection is not finite
    """
    nodes, weights = _nodes(xbar, N, quad_order)
    g = np.asarray(func(nodes), dtype=float)
    out = np.array([np.sum(weights * g * b(nodes)) for b in hermite_basis(xbar, N)])
    if not np.all(np.isfinite(out)):
        raise ConfigurationError(f'coefficient is not square integrable under exp(-(x - {xbar})^2)')
    return out

def _nodes(xbar:float, N:int, quad_order:int) -> tuple[npt.NDArray, npt.NDArray]:
    if quad_order < N + 1:
        raise ConfigurationError(f'Hermite expansion of order {N} needs at least {N + 1} '
                                 f'quadrature nodes, got {quad_order}')
    u, w = hermite.hermgauss(quad_order)
    return xbar + u, w

@dataclass(frozen=True)
class _Projection:
    """t -> scale * <c(t, .), B_n>"""
    coefficient:Coefficient
    nodes:npt.NDArray
    weights:npt.NDArray
    scale:float

    def __call__(self, t:float) -> float:
        g = np.asarray(self.coefficient(t, self.nodes), dtype=float)
        return self.scale * float(np.sum(self.weights * g))

def hermite_expand(model:ModelSpec, xbar:float, N:int, quad_order:int=32) -> SymbolExpansion:
    """
    Expands the model coefficients in Hermite functions centered at xbar.

    The constant Hermite function B_0 = pi^(-1/4) is folded into phi_0 so
    that the expansion carries B_0 = 1 like the other families.

    Args:
        model (ModelSpec): Model
        xbar (float): Center
        N (int): Highest order
        quad_order (int): Optional. Number of Gauss-Hermite nodes

    Raises:
        ConfigurationError: If quad_order < N + 1 or a coefficient is not
            square integrable

    Returns:
        SymbolExpansion
    """
    if N < 0:
        raise ValueError(f'N must be >= 0, got {N}')
    nodes, weights = _nodes(xbar, N, quad_order)
    polys = hermite_basis(xbar, N)
    b0 = polys[0].coef[0]

    basis, symbols = [BasisPolynomial(np.ones(1))], []
    for n, p in enumerate(polys):
        if n: basis.append(BasisPolynomial.from_polynomial(p))
        w = weights * p(nodes)
        scale = b0 if n == 0 else 1.
        coefs = []
        for c in (model.a, model.gamma, model.jump_multiplier):
            proj = freeze(_Projection(c, nodes, w, scale), c.time_homogeneous)
            if c.time_homogeneous and not np.isfinite(proj(0.)):
                raise ConfigurationError(f"coefficient '{c.label}' is not square integrable "
                                         f"under exp(-(x - {xbar})^2)")
            coefs.append(proj)
        symbols.append(FrozenSymbol(*coefs, model.measure, model.time_homogeneous))
    logger.debug('Hermite expansion of %s at xbar=%g up to order %d with %d nodes',
                 model.name, xbar, N, quad_order)
    return SymbolExpansion(EBasisFamilies.HERMITE, tuple(basis), tuple(symbols), (xbar,))
