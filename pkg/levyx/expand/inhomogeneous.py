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
from typing import Any, Callable, Optional

import numpy as np
import numpy.typing as npt

from levyx.auxiliary import gauss_legendre
from levyx.basis.expansion import SymbolExpansion
from levyx.exceptions import QuadratureError
from levyx.jets import DeltaCombination, Jet, jet_lift

logger = logging.getLogger(__name__)

DEFAULT_QUAD_ORDER = 24
"""Gauss-Legendre nodes per nesting level"""

class NestedQuadrature:
    """
    Terms of a time dependent expansion, v_n(t) = exp(Phi(t, T)) w_n(t) with

        Phi(s, T) = int_s^T phi_0(u) du,
        w_0 = h^,
        w_n(t) = sum_(k=1..n) int_t^T B_k(i D_s)[phi_k(s) w_(n-k)(s)] ds,
        D_s = d/dxi + Phi'(s, T).

    Every time integral is a Gauss-Legendre rule of the same order. Values
    of Phi and w are cached per node, the carriers are Jets or
    DeltaCombinations.

    Args:
        expansion (SymbolExpansion): Symbol expansion
        h (Any): Payoff transform as Jet or DeltaCombination
        base (npt.NDArray): Base point(s) of the symbol jets
        K (int): Jet order of the symbols
        T (float): Maturity
        quad_order (int): Optional. Nodes per time integral
    """

    def __init__(self, expansion:SymbolExpansion, h:Any, base:npt.NDArray, K:int, T:float,
                 quad_order:int=DEFAULT_QUAD_ORDER):
        if quad_order < 1:
            raise ValueError(f'quad_order must be >= 1, got {quad_order}')
        self.expansion = expansion
        self.h = h
        self.base = base
        self.K = K
        self.T = T
        self.quad_order = quad_order
        self._phi:dict[float, list[Jet]] = {}
        self._Phi:dict[float, Jet] = {}
        self._w:dict[tuple[int, float], Any] = {}

    def phi(self, s:float) -> list[Jet]:
        """Jets of phi_0(s) ... phi_N(s)"""
        if s not in self._phi:
            self._phi[s] = self.expansion.symbol_jets(s, self.base, self.K)
        return self._phi[s]

    def Phi(self, s:float) -> Jet:
        """Jet of int_s^T phi_0(u) du"""
        if s not in self._Phi:
            phi0 = self.expansion.symbols[0]
            if phi0.time_homogeneous:
                out = (self.T - s) * self.phi(s)[0]
            else:
                nodes, weights = gauss_legendre(s, self.T, self.quad_order)
                out = sum(w * self.phi(u)[0] for u, w in zip(nodes, weights))
            self._Phi[s] = out
        return self._Phi[s]

    def _operator(self, basis:Any, c:Any, dPhi:Optional[Jet]) -> Any:
        out, cur = None, c
        for m, b in enumerate(basis.coef):
            if m: cur = cur.derivative() + cur * dPhi
            if b != 0:
                term = cur * (b * 1j**m)
                out = term if out is None else out + term
        return c * 0. if out is None else out

    def _source(self, n:int, s:float) -> Optional[Any]:
        phi = self.phi(s)
        Phi = self.Phi(s)
        dPhi = Phi.derivative() if Phi.order > 0 else None
        out = None
        for k in range(1, n + 1):
            if self.expansion.symbols[k].is_zero:
                continue
            term = self._operator(self.expansion.basis[k], self.w(n - k, s) * phi[k], dPhi)
            out = term if out is None else out + term
        return out

    def w(self, n:int, s:float) -> Any:
        """Carrier w_n(s)"""
        if n == 0:
            return self.h
        key = (n, s)
        if key not in self._w:
            out = None
            if s < self.T:
                nodes, weights = gauss_legendre(s, self.T, self.quad_order)
                for u, wt in zip(nodes, weights):
                    f = self._source(n, u)
                    if f is not None:
                        out = f * wt if out is None else out + f * wt
            self._w[key] = self.h * 0. if out is None else out
        return self._w[key]

def _check(expansion:SymbolExpansion, N:int, t:float, T:float):
    if not 0 <= N <= expansion.order:
        raise ValueError(f'N must be in [0, {expansion.order}], got {N}')
    if t > T:
        raise ValueError(f't must be <= T, got t={t}, T={T}')

def _values(q:NestedQuadrature, t:float, N:int) -> npt.NDArray:
    growth = np.exp(q.Phi(t).value)
    return np.array([growth * q.w(n, t).value for n in range(N + 1)])

def build_terms_inhomogeneous(expansion:SymbolExpansion, h_hat:Callable[[Any], Any], t:float, T:float,
                              N:int, xi:npt.ArrayLike, quad_order:int=DEFAULT_QUAD_ORDER,
                              tol:Optional[float]=None) -> npt.NDArray:
    """
    Gets the transformed expansion terms v_0(t, xi) ... v_N(t, xi) of a
    model whose frozen symbols may depend on time.

    Args:
        expansion (SymbolExpansion): Symbol expansion
        h_hat (Callable): Jet-liftable payoff transform
        t (float): Start time
        T (float): Maturity
        N (int): Highest order
        xi (npt.ArrayLike): Complex frequencies
        quad_order (int): Optional. Gauss-Legendre nodes per nesting level
        tol (float): Optional. If given, the terms are recomputed with twice the
            nodes and QuadratureError is raised if they differ by more than
            tol * (1 + |v|).

    Returns:
        npt.NDArray: v_0 ... v_N with shape (N + 1, *xi.shape)
    """
    _check(expansion, N, t, T)
    xi = np.asarray(xi, dtype=complex)
    K = expansion.jet_budget(N)
    logger.debug('inhomogeneous engine: N=%d, jet order %d, %d time nodes, %d frequencies',
                 N, K, quad_order, xi.size)
    h = jet_lift(h_hat, xi, K)
    out = _values(NestedQuadrature(expansion, h, xi, K, T, quad_order), t, N)
    if tol is None:
        return out
    fine = _values(NestedQuadrature(expansion, h, xi, K, T, 2 * quad_order), t, N)
    err = np.max(np.abs(fine - out) / (1. + np.abs(fine)))
    if err > tol:
        raise QuadratureError(f'time quadrature with {quad_order} and {2 * quad_order} nodes differs by '
                              f'{err:.3g} > {tol:.3g}, increase quad_order')
    return fine

def inhomogeneous_term_jets(expansion:SymbolExpansion, h_hat:Callable[[Any], Any], t:float, T:float,
                            N:int, xi:npt.ArrayLike, quad_order:int=DEFAULT_QUAD_ORDER,
                            extra:int=0) -> list[Jet]:
    """Gets the jets of v_0(t, .) ... v_N(t, .) at xi with at least extra orders left"""
    _check(expansion, N, t, T)
    xi = np.asarray(xi, dtype=complex)
    K = expansion.jet_budget(N) + extra
    q = NestedQuadrature(expansion, jet_lift(h_hat, xi, K), xi, K, T, quad_order)
    growth = q.Phi(t).exp()
    return [growth * q.w(n, t) for n in range(N + 1)]

def bond_terms_inhomogeneous(expansion:SymbolExpansion, t:float, T:float, N:int, x:float,
                             quad_order:int=DEFAULT_QUAD_ORDER, dx:int=0) -> npt.NDArray:
    """
    Gets the terms v_0 ... v_N of E[exp(-int_t^T gamma)] for the payoff h = 1,
    pairing the delta combinations with exp(i xi x + Phi(t, T)) at xi = 0.
    dx > 0 gives the x-derivatives of the terms.
    """
    _check(expansion, N, t, T)
    K = expansion.jet_budget(N)
    zero = np.zeros(1)
    q = NestedQuadrature(expansion, DeltaCombination.dirac(1., (1,)), zero, K, T, quad_order)
    xi = Jet.variable(zero, K)
    test = (1j * x * xi + q.Phi(t)).exp() * (1j * xi)**dx
    return np.array([q.w(n, t).pair(test)[0].real for n in range(N + 1)])
