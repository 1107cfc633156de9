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
from typing import Optional

import numpy as np
import numpy.typing as npt
from scipy.special import gammaln

from levyx.auxiliary import gauss_legendre

logger = logging.getLogger(__name__)

SERIES_TOL = 1e-16
"""Poisson weight below which the kernel series are cut"""

@dataclass(frozen=True)
class BoundParams:
    """
    Parameters of the Gaussian-jump envelope kernels.

    The kernels belong to the constant coefficient operator with half-variance
    m_bar / 2 and jumps of intensity m_bar distributed N(m_bar, m_bar). m_bar has
    to dominate the coefficients of the model on the (t, x) box of interest,
    see auto_m_bar.

    Args:
        m_bar: Dominating constant
        tol: Optional. Poisson weight at which the series are cut
        n_max: Optional. Fixed cutoff of the jump count series
        k_max: Optional. Fixed cutoff of the convolution power series of gamma_tilde
    """
    m_bar:float
    """Dominating constant"""
    tol:float = SERIES_TOL
    """Poisson weight at which the series are cut"""
    n_max:Optional[int] = None
    """Fixed cutoff of the jump count series, None for automatic"""
    k_max:Optional[int] = None
    """Fixed cutoff of the convolution power series, None for automatic"""

    def __post_init__(self):
        if not self.m_bar > 0:
            raise ValueError(f'm_bar must be > 0, got {self.m_bar}')
        if not 0. < self.tol < 1.:
            raise ValueError(f'tol must lie in (0, 1), got {self.tol}')
        for name in ('n_max', 'k_max'):
            v = getattr(self, name)
            if v is not None and v < 0:
                raise ValueError(f'{name} must be >= 0, got {v}')

    def n_terms(self, tau:float) -> int:
        """Gets the last jump count summed for a time span tau"""
        if self.n_max is not None:
            return self.n_max
        return _cutoff(self.m_bar * tau, np.log(self.tol))

    def k_terms(self, tau:float) -> int:
        """Gets the last convolution power summed in gamma_tilde for a time span tau"""
        if self.k_max is not None:
            return self.k_max
        # (m tau)^(k/2) / sqrt(k!) < tol  <=>  Poisson weight < tol^2 exp(-m tau)
        lam = self.m_bar * tau
        return _cutoff(lam, 2. * np.log(self.tol) - lam)

    def doubled(self, tau:float) -> 'BoundParams':
        """Gets a copy with both cutoffs doubled"""
        return BoundParams(self.m_bar, self.tol, 2 * self.n_terms(tau) + 1, 2 * self.k_terms(tau) + 1)

def _cutoff(lam:float, log_tol:float) -> int:
    """Smallest n beyond the mode with log(exp(-lam) lam^n / n!) < log_tol"""
    if lam <= 0.:
        return 0
    n = int(np.ceil(lam))
    log_lam = np.log(lam)
    while -lam + n * log_lam - gammaln(n + 1) >= log_tol:
        n += 1
    return n

def _check_times(t:float, T:float) -> float:
    if not t < T:
        raise ValueError(f't must be < T, got t = {t}, T = {T}')
    return T - t

def _log_poisson(lam:float, n:npt.NDArray) -> npt.NDArray:
    return -lam + n * np.log(lam) - gammaln(n + 1)

def _gaussians(m:float, tau:float, shift:npt.NDArray, d:npt.NDArray) -> npt.NDArray:
    """Gaussian densities with mean -m shift and variance m (tau + shift), evaluated at d = x - y"""
    var = m * (tau + shift)
    return np.exp(-(d + m * shift)**2 / (2. * var)) / np.sqrt(2. * np.pi * var)

def convolved_kernel(k:int, t:float, x:npt.ArrayLike, T:float, y:npt.ArrayLike,
                     params:BoundParams) -> npt.NDArray:
    """
    Gets the k-fold jump convolution of gamma_bar,

        C^k gamma_bar(t, x; T, y) = exp(-m tau) sum_n (m tau)^n / n!
            * exp(-(x - y + m (n + k))^2 / (2 m (tau + n + k))) / sqrt(2 pi m (tau + n + k))

    with tau = T - t and m = params.m_bar.

    Args:
        k (int): Convolution power >= 0
        t (float): Initial time
        x (npt.ArrayLike): Initial log-price
        T (float): Final time, > t
        y (npt.ArrayLike): Final log-price
        params (BoundParams): Dominating constant and series cutoffs

    Returns:
        npt.NDArray: Kernel values, broadcast over x and y
    """
    if k < 0:
        raise ValueError(f'k must be >= 0, got {k}')
    tau = _check_times(t, T)
    m = params.m_bar
    n = np.arange(params.n_terms(tau) + 1, dtype=float)
    d = np.subtract(x, y, dtype=float)[..., None]
    terms = np.exp(_log_poisson(m * tau, n)) * _gaussians(m, tau, n + k, d)
    return terms.sum(axis=-1)

def gamma_bar(t:float, x:npt.ArrayLike, T:float, y:npt.ArrayLike, params:BoundParams) -> npt.NDArray:
    """Gets the transition density of the dominating constant coefficient process"""
    return convolved_kernel(0, t, x, T, y, params)

def gamma_tilde(t:float, x:npt.ArrayLike, T:float, y:npt.ArrayLike, params:BoundParams,
                assembled:bool=False) -> npt.NDArray:
    """
    Gets the kernel paired with the x-gradient of the Levy measure,

        gamma_tilde = sum_k (m tau)^(k/2) / sqrt(k!) C^(k+1) gamma_bar,

    summed as one double series over jump count n and power k.

    Args:
        t (float): Initial time
        x (npt.ArrayLike): Initial log-price
        T (float): Final time, > t
        y (npt.ArrayLike): Final log-price
        params (BoundParams): Dominating constant and series cutoffs
        assembled (bool): Optional. Sum convolved_kernel over k instead of the
            double series.

    Returns:
        npt.NDArray: Kernel values, broadcast over x and y
    """
    tau = _check_times(t, T)
    m = params.m_bar
    lam = m * tau
    k = np.arange(params.k_terms(tau) + 1, dtype=float)
    log_wk = 0.5 * (k * np.log(lam) - gammaln(k + 1))
    if assembled:
        return sum(np.exp(w) * convolved_kernel(int(kk) + 1, t, x, T, y, params)
                   for kk, w in zip(k, log_wk))

    n = np.arange(params.n_terms(tau) + 1, dtype=float)
    log_w = _log_poisson(lam, n)[:, None] + log_wk[None, :]
    shift = n[:, None] + k[None, :] + 1.
    d = np.subtract(x, y, dtype=float)[..., None, None]
    return (np.exp(log_w) * _gaussians(m, tau, shift, d)).sum(axis=(-2, -1))

def semigroup_check(k:int, N:int, t:float, s:float, T:float, x:float, y:float,
                    params:BoundParams, order:int=32, panel_width:float=0.5) -> float:
    """
    Gets the residual of the semigroup property

        | int C^k gamma_bar(t, x; s, z) C^N gamma_bar(s, z; T, y) dz - C^(k+N) gamma_bar(t, x; T, y) |

    with the z-integral done by panelized Gauss-Legendre quadrature.

    Args:
        k (int): Power of the first kernel
        N (int): Power of the second kernel
        t (float): Initial time
        s (float): Intermediate time, t < s < T
        T (float): Final time
        x (float): Initial log-price
        y (float): Final log-price
        params (BoundParams): Dominating constant and series cutoffs
        order (int): Optional. Nodes per panel
        panel_width (float): Optional. Panel width

    Returns:
        float: Residual
    """
    if not t < s < T:
        raise ValueError(f'need t < s < T, got t = {t}, s = {s}, T = {T}')
    m = params.m_bar
    spread = params.n_terms(T - t) + k + N + 1
    sd = np.sqrt(m * (T - t + spread))
    lo = min(x, y) - 12. * sd
    hi = max(x, y) + m * spread + 12. * sd
    panels = int(np.ceil((hi - lo) / panel_width))
    z, w = gauss_legendre(0., panel_width, order)
    zeta = (lo + panel_width * np.arange(panels)[:, None] + z).ravel()
    weights = np.tile(w, panels)

    left = convolved_kernel(k, t, x, s, zeta, params)
    right = convolved_kernel(N, s, zeta, T, y, params)
    direct = float(convolved_kernel(k + N, t, x, T, y, params))
    residual = abs(float(weights @ (left * right)) - direct)
    logger.debug('semigroup k=%d N=%d: %d nodes, residual %.3e', k, N, zeta.size, residual)
    return residual
