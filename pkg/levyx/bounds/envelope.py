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

from levyx.auxiliary import gauss_legendre
from levyx.enums import EJumpMeasures, EPayoffs
from levyx.exceptions import UnsupportedFormError
from levyx.models import ModelSpec
from levyx.protocols import IPayoff
from .kernels import BoundParams, gamma_bar, gamma_tilde

logger = logging.getLogger(__name__)

HEADROOM = 1.1
"""Factor applied to the coefficient maximum by auto_m_bar"""

Box = tuple[tuple[float, float], tuple[float, float]]

@dataclass(frozen=True)
class EnvelopeComponents:
    """
    Parts of an envelope shape C tau (gamma_bar + dnu_norm gamma_tilde).
    Not a certified bound: C and m_bar are inputs.
    """
    value:float | npt.NDArray
    """Envelope shape"""
    gamma_bar:float | npt.NDArray
    """Transition density of the dominating process"""
    gamma_tilde:float | npt.NDArray
    """Kernel paired with the x-gradient of the Levy measure"""
    tau:float
    """Time to maturity"""
    m_bar:float
    """Dominating constant"""

def _gaussian_measure(model:ModelSpec):
    m = model.measure
    if m is not None and m.kind != EJumpMeasures.GAUSSIAN:
        raise UnsupportedFormError(f"error envelopes need Gaussian jumps, model '{model.name}' "
                                   f"has '{m.kind.value}' jumps")
    return m

def _grid(model:ModelSpec, box:Optional[Box], nt:int=5, nx:int=41) -> tuple[npt.NDArray, npt.NDArray]:
    (t0, t1), (x0, x1) = box if box is not None else (model.domain_t, model.domain_x)
    return np.linspace(t0, t1, nt), np.linspace(x0, x1, nx)

def auto_m_bar(model:ModelSpec, box:Optional[Box]=None, headroom:float=HEADROOM) -> float:
    """
    Gets a dominating constant for a Gaussian-jump model,

        m_bar = headroom * max{2 a, gamma, lambda * multiplier, std^2, |mean|}

    with the coefficients maximized on a grid over the (t, x) box.

    Args:
        model (ModelSpec): Model with Gaussian or no jumps
        box (Box): Optional. ((t0, t1), (x0, x1)), defaults to the model domain
        headroom (float): Optional. Factor applied to the maximum

    Raises:
        UnsupportedFormError: If the jumps are not Gaussian

    Returns:
        float: m_bar
    """
    measure = _gaussian_measure(model)
    ts, xs = _grid(model, box)
    a = max(np.max(model.a(t, xs)) for t in ts)
    g = max(np.max(model.gamma(t, xs)) for t in ts)
    candidates = [2. * a, g]
    if measure is not None:
        mult = max(np.max(model.jump_multiplier(t, xs)) for t in ts)
        candidates += [measure.intensity * mult, measure.std**2, abs(measure.mean)]
    m_bar = headroom * float(max(candidates))
    if m_bar <= 0.:
        raise UnsupportedFormError(f"model '{model.name}' has vanishing coefficients on the box, "
                                   f"no dominating constant")
    logger.debug("auto m_bar of '%s': %.6g", model.name, m_bar)
    return m_bar

def jump_gradient_norm(model:ModelSpec, box:Optional[Box]=None) -> float:
    """
    Gets sup |d/dx nu(t, x, dz)| on the (t, x) box, i.e. the jump intensity
    times the largest x-derivative of the jump multiplier.

    Raises:
        UnsupportedFormError: If the jumps are not Gaussian
    """
    measure = _gaussian_measure(model)
    if measure is None or model.jump_multiplier.is_zero:
        return 0.
    ts, xs = _grid(model, box)
    c = model.jump_multiplier
    slope = max(abs(c.derivative(t, x, 1, model.finite_differences)) for t in ts for x in xs)
    return float(measure.intensity * slope)

def bound_params(model:ModelSpec, box:Optional[Box]=None, m_bar:Optional[float]=None,
                 **kwargs) -> tuple[BoundParams, float]:
    """
    Gets the envelope inputs of a model.

    Args:
        model (ModelSpec): Model with Gaussian or no jumps
        box (Box): Optional. ((t0, t1), (x0, x1)), defaults to the model domain
        m_bar (float): Optional. Dominating constant, auto_m_bar if None
        **kwargs: Further BoundParams fields

    Returns:
        tuple[BoundParams, float]: params, sup |d/dx nu|
    """
    dnu = jump_gradient_norm(model, box)
    if m_bar is None:
        m_bar = auto_m_bar(model, box)
    return BoundParams(m_bar, **kwargs), dnu

def _check_inputs(dnu_norm:float, C:float):
    if dnu_norm < 0:
        raise ValueError(f'dnu_norm must be >= 0, got {dnu_norm}')
    if not C > 0:
        raise ValueError(f'C must be > 0, got {C}')

def envelope_components(t:float, x:npt.ArrayLike, T:float, y:npt.ArrayLike, params:BoundParams,
                        dnu_norm:float, C:float=1.) -> EnvelopeComponents:
    """Gets density_error_envelope together with its kernels"""
    _check_inputs(dnu_norm, C)
    gb = gamma_bar(t, x, T, y, params)
    gt = gamma_tilde(t, x, T, y, params) if dnu_norm > 0 else np.zeros_like(gb)
    tau = T - t
    return EnvelopeComponents(C * tau * (gb + dnu_norm * gt), gb, gt, tau, params.m_bar)

def density_error_envelope(t:float, x:npt.ArrayLike, T:float, y:npt.ArrayLike, params:BoundParams,
                           dnu_norm:float, C:float=1.) -> npt.NDArray:
    """
    Gets the shape of the error of an approximate transition density,

        C (T - t) (gamma_bar(t, x; T, y) + dnu_norm gamma_tilde(t, x; T, y)).

    The constant C is not known explicitly, so the result is an envelope
    shape and no certified bound. For state independent jumps (dnu_norm = 0)
    it decays like (T - t)^2 at x != y, otherwise like (T - t).

    Args:
        t (float): Initial time
        x (npt.ArrayLike): Initial log-price
        T (float): Final time, > t
        y (npt.ArrayLike): Final log-price
        params (BoundParams): Dominating constant and series cutoffs
        dnu_norm (float): sup |d/dx nu|, see jump_gradient_norm
        C (float): Optional. Scale, > 0

    Returns:
        npt.NDArray: Envelope shape
    """
    return envelope_components(t, x, T, y, params, dnu_norm, C).value

def price_error_envelope(payoff:IPayoff, t:float, x:float, T:float, params:BoundParams,
                         dnu_norm:float, C:float=1., order:int=32, panel_width:float=0.5) -> float:
    """
    Gets the shape of the error of an approximate price,

        int |h(y)| density_error_envelope(t, x, T, y) dy,

    by panelized Gauss-Legendre quadrature in y.

    Args:
        payoff (IPayoff): Call, put or constant payoff
        t (float): Initial time
        x (float): Initial log-price
        T (float): Final time, > t
        params (BoundParams): Dominating constant and series cutoffs
        dnu_norm (float): sup |d/dx nu|
        C (float): Optional. Scale, > 0
        order (int): Optional. Nodes per panel
        panel_width (float): Optional. Panel width

    Raises:
        ValueError: For delta payoffs, use density_error_envelope

    Returns:
        float: Envelope shape
    """
    if payoff.kind == EPayoffs.DELTA:
        raise ValueError('the price envelope of a delta payoff is density_error_envelope')
    _check_inputs(dnu_norm, C)
    tau = T - t
    m = params.m_bar
    spread = params.n_terms(tau) + params.k_terms(tau) + 1
    sd = np.sqrt(m * (tau + spread))
    lo, hi = x - 12. * sd, x + m * spread + 12. * sd
    panels = int(np.ceil((hi - lo) / panel_width))
    z, w = gauss_legendre(0., panel_width, order)
    y = (lo + panel_width * np.arange(panels)[:, None] + z).ravel()
    weights = np.tile(w, panels)
    h = np.abs(payoff(y))
    env = density_error_envelope(t, x, T, y, params, dnu_norm, C)
    return float(weights @ (h * env))
