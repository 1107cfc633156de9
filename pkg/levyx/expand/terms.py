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
from typing import Any, Callable, Optional

import numpy as np
import numpy.typing as npt

from levyx.basis.expansion import SymbolExpansion
from levyx.enums import EBasisFamilies, EEngines
from levyx.exceptions import UnsupportedFormError
from levyx.jets import Jet, apply_basis_operator
from .homogeneous import build_terms_homogeneous, homogeneous_term_jets
from .inhomogeneous import DEFAULT_QUAD_ORDER, build_terms_inhomogeneous, inhomogeneous_term_jets

logger = logging.getLogger(__name__)

@dataclass(frozen=True)
class ExpansionTermSet:
    """
    Transformed expansion terms v_0(t, .) ... v_N(t, .) of one payoff,
    evaluated on the contour xi = xi_r + i * contour.

    Args:
        expansion: Symbol expansion
        h_hat: Jet-liftable payoff transform
        T: Maturity
        N: Highest order
        contour: Optional. Imaginary part of the contour
        engine: Optional. Time integration engine
        quad_order: Optional. Gauss-Legendre nodes of the inhomogeneous engine
        tol: Optional. Order doubling tolerance of the inhomogeneous engine
    """
    expansion:SymbolExpansion
    """Symbol expansion"""
    h_hat:Callable[[Any], Any]
    """Jet-liftable payoff transform"""
    T:float
    """Maturity"""
    N:int
    """Highest order"""
    contour:float = 0.
    """Imaginary part of the contour"""
    engine:EEngines = EEngines.HOMOGENEOUS
    """Time integration engine"""
    quad_order:int = DEFAULT_QUAD_ORDER
    """Gauss-Legendre nodes per nesting level of the inhomogeneous engine"""
    tol:Optional[float] = None
    """Order doubling tolerance of the inhomogeneous engine"""

    def __post_init__(self):
        if not 0 <= self.N <= self.expansion.order:
            raise ValueError(f'N must be in [0, {self.expansion.order}], got {self.N}')
        object.__setattr__(self, 'engine', EEngines(self.engine))
        if self.engine == EEngines.HOMOGENEOUS and not self.expansion.time_homogeneous:
            raise UnsupportedFormError('the homogeneous engine needs time independent frozen symbols, '
                                       'use the inhomogeneous engine')

    @property
    def family(self) -> EBasisFamilies:
        return self.expansion.family

    def terms(self, xi:npt.ArrayLike, t:float=0.) -> npt.NDArray:
        """Gets v_0(t, xi) ... v_N(t, xi) at complex xi, shape (N + 1, *xi.shape)"""
        if self.engine == EEngines.HOMOGENEOUS:
            return build_terms_homogeneous(self.expansion, self.h_hat, self.T - t, self.N, xi)
        return build_terms_inhomogeneous(self.expansion, self.h_hat, t, self.T, self.N, xi,
                                         self.quad_order, self.tol)

    def term_jets(self, xi:npt.ArrayLike, t:float=0., extra:int=0) -> list[Jet]:
        """Gets the jets of v_0(t, .) ... v_N(t, .) at complex xi"""
        if self.engine == EEngines.HOMOGENEOUS:
            return homogeneous_term_jets(self.expansion, self.h_hat, self.T - t, self.N, xi, extra)
        return inhomogeneous_term_jets(self.expansion, self.h_hat, t, self.T, self.N, xi,
                                       self.quad_order, extra)

    def on_contour(self, xi_r:npt.ArrayLike, t:float=0.) -> npt.NDArray:
        """Gets the terms at xi_r + i * contour"""
        return self.terms(np.asarray(xi_r, dtype=float) + 1j * self.contour, t)

    def __call__(self, xi_r:npt.ArrayLike, t:float=0.) -> npt.NDArray:
        """Gets the truncated sum v^(N)(t, xi_r + i * contour)"""
        return np.sum(self.on_contour(xi_r, t), axis=0)

def ode_residual(terms:ExpansionTermSet, n:int, t:float, xi:npt.ArrayLike, step:float=1e-4) -> npt.NDArray:
    """
    Gets the residual of the transformed Cauchy problem of order n,

        (d/dt + phi_0(t, xi)) v_n + sum_(k=1..n) B_k(i d/dxi)(phi_k v_(n-k)),

    with d/dt by a second order central difference. Used to check the engines.

    Args:
        terms (ExpansionTermSet): Terms with N >= n
        n (int): Order
        t (float): Time with t - step >= 0 and t + step <= T
        xi (npt.ArrayLike): Complex frequencies
        step (float): Optional. Central difference step

    Returns:
        npt.NDArray: Complex residuals
    """
    if not 0 <= n <= terms.N:
        raise ValueError(f'n must be in [0, {terms.N}], got {n}')
    xi = np.asarray(xi, dtype=complex)
    ex = terms.expansion
    dt = (terms.terms(xi, t + step)[n] - terms.terms(xi, t - step)[n]) / (2 * step)
    jets = terms.term_jets(xi, t)
    out = dt + ex.symbols[0].evaluate(t, xi) * jets[n].value
    K = jets[0].order
    for k in range(1, n + 1):
        phi_k = ex.symbols[k].jet(t, xi, K)
        out = out + apply_basis_operator(ex.basis[k], phi_k * jets[n - k])
    return out
