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
from typing import Any, Callable

import numpy as np
import numpy.typing as npt

from levyx.basis.expansion import SymbolExpansion
from levyx.exceptions import UnsupportedFormError
from levyx.jets import DeltaCombination, Jet, jet_lift
from .term_polynomial import TermPolynomial

logger = logging.getLogger(__name__)

def _check(expansion:SymbolExpansion, N:int):
    if not 0 <= N <= expansion.order:
        raise ValueError(f'N must be in [0, {expansion.order}], got {N}')
    if not expansion.time_homogeneous:
        raise UnsupportedFormError('the homogeneous engine needs time independent frozen symbols, '
                                   'use the inhomogeneous engine')

def term_polynomials(expansion:SymbolExpansion, h:Any, phi:list[Jet], N:int) -> list[TermPolynomial]:
    """
    Gets P_0 ... P_N with u_n(tau) = exp(tau phi_0) P_n(tau) from

        P_0 = h,   P_n(s) = int_0^s sum_(k=1..n) B_k(iD)[phi_k P_(n-k)](r) dr.

    Args:
        expansion (SymbolExpansion): Time independent expansion
        h (Any): Payoff transform as Jet or DeltaCombination
        phi (list[Jet]): Jets of phi_0 ... phi_N at the base point(s)
        N (int): Highest order

    Returns:
        list[TermPolynomial]
    """
    dphi0 = phi[0].derivative() if phi[0].order > 0 else None
    P = [TermPolynomial([h], dphi0)]
    for n in range(1, N + 1):
        acc = None
        for k in range(1, n + 1):
            if expansion.symbols[k].is_zero:
                continue
            term = (P[n - k] * phi[k]).apply_operator(expansion.basis[k])
            acc = term if acc is None else acc + term
        P.append(P[0].zero() if acc is None else acc.integrate())
    return P

def homogeneous_term_jets(expansion:SymbolExpansion, h_hat:Callable[[Any], Any], tau:float, N:int,
                          xi:npt.ArrayLike, extra:int=0) -> list[Jet]:
    """
    Gets the jets of u_0(tau, .) ... u_N(tau, .) at xi, each with at least
    extra orders left.
    """
    _check(expansion, N)
    xi = np.asarray(xi, dtype=complex)
    K = expansion.jet_budget(N) + extra
    phi = expansion.symbol_jets(0., xi, K)
    P = term_polynomials(expansion, jet_lift(h_hat, xi, K), phi, N)
    growth = (tau * phi[0]).exp()
    return [growth * p(tau) for p in P]

def build_terms_homogeneous(expansion:SymbolExpansion, h_hat:Callable[[Any], Any], tau:float, N:int,
                            xi:npt.ArrayLike) -> npt.NDArray:
    """
    Gets the transformed expansion terms of a time-homogeneous model,

        u_0 = exp(tau phi_0) h^,
        u_n = sum_(k=1..n) int_0^tau exp((tau - s) phi_0) B_k(i d/dxi)[phi_k u_(n-k)(s)] ds,

    with the time integrals done exactly on the polynomial factor.

    Args:
        expansion (SymbolExpansion): Time independent symbol expansion
        h_hat (Callable): Jet-liftable payoff transform
        tau (float): Time to maturity > 0
        N (int): Highest order
        xi (npt.ArrayLike): Complex frequencies

    Raises:
        UnsupportedFormError: If a frozen symbol depends on t
        JetOrderError: If the jet budget is exceeded
        DomainError: If xi leaves the strip of the jump transform

    Returns:
        npt.NDArray: u_0 ... u_N with shape (N + 1, *xi.shape)
    """
    _check(expansion, N)
    if tau < 0:
        raise ValueError(f'tau must be >= 0, got {tau}')
    xi = np.asarray(xi, dtype=complex)
    K = expansion.jet_budget(N)
    logger.debug('homogeneous engine: N=%d, jet order %d, %d frequencies', N, K, xi.size)
    phi = expansion.symbol_jets(0., xi, K)
    P = term_polynomials(expansion, jet_lift(h_hat, xi, K), phi, N)
    growth = np.exp(tau * phi[0].value)
    return np.array([growth * p(tau).value for p in P])

def bond_terms_homogeneous(expansion:SymbolExpansion, tau:float, N:int, x:float, dx:int=0) -> npt.NDArray:
    """
    Gets the terms v_0 ... v_N of E[exp(-int gamma)] for the payoff h = 1.

    The transform of h = 1 is a multiple of delta(xi). The recursion keeps it
    a finite combination of derivatives of delta, which is paired with
    exp(i xi x + tau phi_0(xi)) through its jet at xi = 0. No integral over xi
    is evaluated.

    Args:
        expansion (SymbolExpansion): Time independent symbol expansion
        tau (float): Time to maturity
        N (int): Highest order
        x (float): Log-price
        dx (int): Optional. Order of the x-derivative of the terms

    Returns:
        npt.NDArray: Real terms v_0 ... v_N
    """
    _check(expansion, N)
    K = expansion.jet_budget(N)
    zero = np.zeros(1)
    phi = expansion.symbol_jets(0., zero, K)
    P = term_polynomials(expansion, DeltaCombination.dirac(1., (1,)), phi, N)
    xi = Jet.variable(zero, K)
    test = (1j * x * xi + tau * phi[0]).exp() * (1j * xi)**dx
    return np.array([p(tau).pair(test)[0].real for p in P])
