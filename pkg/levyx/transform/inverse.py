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
import warnings
from math import pi, sqrt
from typing import Callable

import numpy as np
import numpy.typing as npt

from levyx.exceptions import ConjugateSymmetryWarning, TruncationError

logger = logging.getLogger(__name__)

PANEL_ORDER = 64
"""Gauss-Legendre nodes per panel"""
PANEL_WIDTH = 10.
"""Width of one panel in xi_r"""
MAX_TRUNCATION = 2000.
"""Largest truncation R chosen by adaptive_truncation"""
GROWTH_TOL = 1e-12
"""exp(tau Re phi_0) at +-R below which the integrand is treated as negligible"""
TAIL_TOL = 1e-9
"""Tolerance of the tail estimate, relative to 1 + |value|"""
IMAG_TOL = 1e-8
"""Tolerance of the imaginary part of a real inverse transform, relative to 1 + |value|"""

class QuadratureCounter:
    """Counts the contour quadratures evaluated by inverse_fourier"""

    def __init__(self):
        self.calls = 0
        self.nodes = 0

    def reset(self):
        self.calls = 0
        self.nodes = 0

quadrature_counter = QuadratureCounter()

def contour_nodes(R:float, order:int=PANEL_ORDER,
                  panel_width:float=PANEL_WIDTH) -> tuple[npt.NDArray, npt.NDArray]:
    """
    Gets panelized Gauss-Legendre nodes and weights on [-R, R].

    Args:
        R (float): Truncation
        order (int): Optional. Nodes per panel
        panel_width (float): Optional. Largest width of one panel

    Returns:
        tuple[npt.NDArray, npt.NDArray]: nodes, weights
    """
    if R <= 0:
        raise ValueError(f'R must be > 0, got {R}')
    panels = max(1, int(np.ceil(2. * R / panel_width)))
    edges = np.linspace(-R, R, panels + 1)
    z, w = np.polynomial.legendre.leggauss(order)
    half = 0.5 * np.diff(edges)[:, None]
    nodes = (edges[:-1, None] + half * (z + 1.)).ravel()
    weights = (half * w).ravel()
    return nodes, weights

def adaptive_truncation(log_growth:Callable[[npt.NDArray], npt.NDArray], contour:float,
                        tol:float=GROWTH_TOL, panel_width:float=PANEL_WIDTH,
                        cap:float=MAX_TRUNCATION) -> float:
    """
    Gets the smallest multiple R of panel_width with
    Re log_growth(+-R + i contour) < log(tol), at most cap.

    Args:
        log_growth (Callable): xi -> tau phi_0(xi) or int_t^T phi_0(s, xi) ds
        contour (float): Imaginary part of the contour
        tol (float): Optional. Growth factor treated as negligible
        panel_width (float): Optional. Step of the search
        cap (float): Optional. Largest R

    Returns:
        float: R
    """
    limit = np.log(tol)
    R = panel_width
    while R < cap:
        g = np.real(log_growth(np.array([-R, R]) + 1j * contour))
        if np.all(g < limit):
            break
        R += panel_width
    R = min(R, cap)
    if R == cap:
        logger.info('integrand decays slowly, truncation capped at R=%g', R)
    logger.debug('truncation R=%g on contour %g', R, contour)
    return R

def inverse_fourier(integrand:Callable[[npt.NDArray], npt.NDArray], x:float, contour:float, R:float,
                    order:int=PANEL_ORDER, panel_width:float=PANEL_WIDTH,
                    tail_tol:float=TAIL_TOL) -> tuple[npt.NDArray, npt.NDArray]:
    """
    Inverts a transform on the contour xi = xi_r + i contour,

        v(x) = (1 / sqrt(2 pi)) int_(-R)^R exp(i xi x) v^(xi) dxi_r.

    Args:
        integrand (Callable): xi_r -> v^(xi_r + i contour), returning an array
            whose last axis runs over the nodes. Leading axes are inverted
            independently (e.g. one row per expansion order).
        x (float): Log-price
        contour (float): Imaginary part of the contour
        R (float): Truncation
        order (int): Optional. Gauss-Legendre nodes per panel
        panel_width (float): Optional. Largest panel width
        tail_tol (float): Optional. Tolerance of the tail estimate

    Raises:
        TruncationError: If the integrand is not negligible at +-R

    Returns:
        tuple[npt.NDArray, npt.NDArray]: Real values and tail estimates,
            both with the leading shape of the integrand
    """
    xr, w = contour_nodes(R, order, panel_width)
    values = np.asarray(integrand(xr), dtype=complex)
    quadrature_counter.calls += 1
    quadrature_counter.nodes += xr.size
    kernel = np.exp(1j * (xr + 1j * contour) * x) / sqrt(2. * pi)
    g = values * kernel
    out = g @ w
    tail = panel_width * (np.abs(g[..., 0]) + np.abs(g[..., -1]))
    if np.any(tail > tail_tol * (1. + np.abs(out))):
        raise TruncationError(f'integrand is not negligible at |xi_r| = {R:g} (tail estimate '
                              f'{np.max(tail):.3g}), increase R')
    if np.any(np.abs(out.imag) > IMAG_TOL * (1. + np.abs(out))):
        warnings.warn(f'inverse transform keeps an imaginary part of {np.max(np.abs(out.imag)):.3g}',
                      ConjugateSymmetryWarning, stacklevel=2)
    logger.debug('inverse transform with %d nodes, R=%g, tail %.3g', xr.size, R, np.max(tail))
    return out.real, tail
