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
from math import factorial

import numpy as np
from numpy.polynomial import Polynomial

from levyx.enums import EBasisFamilies
from levyx.exceptions import UnsupportedFormError
from levyx.models.model_spec import ModelSpec
from levyx.models.symbol import FrozenSymbol
from .expansion import BasisPolynomial, SymbolExpansion

logger = logging.getLogger(__name__)

def two_point_coefficient(dF1:list[float], dF2:list[float], x1:float, x2:float, n:int) -> float:
    """
    Gets the two-point Taylor coefficient c_n(x1, x2) of F from its plain
    derivatives dF1[j] = F^(j)(x1) and dF2[j] = F^(j)(x2):

        c_0 = F(x2) / (x2 - x1)
        c_n = sum_k (k+n-1)! / (k! n! (n-k)!)
              * ((-1)^k k F^(n-k)(x1) + (-1)^(n+1) n F^(n-k)(x2)) / (x1 - x2)^(k+n+1)

    c_n(x2, x1) follows by swapping the arguments.
    """
    if n == 0:
        return dF2[0] / (x2 - x1)
    total = 0.
    for k in range(n + 1):
        w = factorial(k + n - 1) / (factorial(k) * factorial(n) * factorial(n - k))
        total += w * ((-1)**k * k * dF1[n - k] + (-1)**(n + 1) * n * dF2[n - k]) / (x1 - x2)**(k + n + 1)
    return total

def two_point_basis(dF1:list[float], dF2:list[float], x1:float, x2:float, N:int) -> list[BasisPolynomial]:
    """
    Gets B_0 = 1 and for n >= 1
        B_n(x) = (c_(n-1)(x1, x2)(x - x1) + c_(n-1)(x2, x1)(x - x2)) (x - x1)^(n-1) (x - x2)^(n-1)
    so that M + sum_(n>=1) B_n reproduces F + M.
    """
    p1, p2 = Polynomial([-x1, 1.]), Polynomial([-x2, 1.])
    basis = [BasisPolynomial(np.ones(1))]
    for n in range(1, N + 1):
        c12 = two_point_coefficient(dF1, dF2, x1, x2, n - 1)
        c21 = two_point_coefficient(dF2, dF1, x2, x1, n - 1)
        p = (c12 * p1 + c21 * p2) * (p1 * p2)**(n - 1)
        basis.append(BasisPolynomial.from_polynomial(p))
    return basis

def two_point_taylor_expand(model:ModelSpec, x1:float, x2:float, M:float, N:int) -> SymbolExpansion:
    """
    Expands a model of proportional form a = f A, gamma = f Gamma, nu = f W nu_0
    in the two-point Taylor series of F = f - M at x1 and x2.

    phi_0 = M * Phi and phi_n = Phi for n >= 1, where Phi is the frozen symbol
    with coefficients (A, Gamma, W). All x dependence sits in B_n.

    Args:
        model (ModelSpec): Model with a proportional profile
        x1 (float): First expansion point
        x2 (float): Second expansion point, x2 > x1
        M (float): Additive constant
        N (int): Highest order

    Raises:
        ValueError: If x1 >= x2
        UnsupportedFormError: If the model has no time-homogeneous proportional profile

    Returns:
        SymbolExpansion
    """
    if N < 0:
        raise ValueError(f'N must be >= 0, got {N}')
    if not x1 < x2:
        raise ValueError(f'two-point expansion needs x1 < x2, got x1={x1}, x2={x2}')
    p = model.profile
    if p is None:
        raise UnsupportedFormError(f"two-point expansion needs a model of proportional form "
                                   f"a = f A, gamma = f Gamma, nu = f W measure; '{model.name}' is not")
    if not p.f.time_homogeneous:
        raise UnsupportedFormError(f"two-point expansion needs a time independent profile f, "
                                   f"'{model.name}' has f = {p.f.label}")

    fd = model.finite_differences
    n_deriv = max(N - 1, 0)
    dF1 = [p.f.derivative(0., x1, j, fd) for j in range(n_deriv + 1)]
    dF2 = [p.f.derivative(0., x2, j, fd) for j in range(n_deriv + 1)]
    dF1[0] -= M
    dF2[0] -= M
    basis = two_point_basis(dF1, dF2, x1, x2, N)

    symbols = [FrozenSymbol.constant(M * p.A, M * p.Gamma, M * p.W, model.measure)]
    symbols += [FrozenSymbol.constant(p.A, p.Gamma, p.W, model.measure)] * N
    logger.debug('two-point expansion of %s at (%g, %g), M=%g, up to order %d', model.name, x1, x2, M, N)
    return SymbolExpansion(EBasisFamilies.TWO_POINT, tuple(basis), tuple(symbols), (x1, x2), M)
