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
import time
from dataclasses import replace
from typing import Callable, Sequence

import numpy as np
import numpy.typing as npt

from levyx.basis import SymbolExpansion, build_expansion
from levyx.enums import EBasisFamilies, EEngines, EPayoffs
from levyx.exceptions import SpreadUndefinedError, TruncationError
from levyx.expand import ExpansionTermSet, bond_terms_homogeneous, bond_terms_inhomogeneous
from levyx.protocols import IPayoff
from levyx.transform import MAX_TRUNCATION, DeltaPayoff, adaptive_truncation, inverse_fourier, payoff_from_kind
from .black_scholes import implied_vol
from .request import Diagnostics, Greeks, PricingRequest, PricingResult

logger = logging.getLogger(__name__)

def _expansion(req:PricingRequest) -> SymbolExpansion:
    return build_expansion(req.model, req.family, req.N, req.expansion_point, req.delta,
                           req.shift, req.basis_quad_order)

def _engine(req:PricingRequest, expansion:SymbolExpansion) -> EEngines:
    if req.engine is not None:
        return req.engine
    return EEngines.HOMOGENEOUS if expansion.time_homogeneous else EEngines.INHOMOGENEOUS

def _log_growth(expansion:SymbolExpansion, t:float, T:float) -> Callable[[npt.NDArray], npt.NDArray]:
    phi0 = expansion.symbols[0]
    if phi0.time_homogeneous:
        return lambda xi: (T - t) * phi0.evaluate(t, xi).real
    ts = np.linspace(t, T, 5)
    return lambda xi: (T - t) * np.max([phi0.evaluate(s, xi).real for s in ts], axis=0)

def _truncation(req:PricingRequest, expansion:SymbolExpansion, contour:float) -> float:
    if req.R is not None:
        return req.R
    return adaptive_truncation(_log_growth(expansion, req.t, req.T), contour)

def _invert(req:PricingRequest, expansion:SymbolExpansion, payoff:IPayoff, contour:float, R:float,
            N:int, dx:int=0) -> tuple[npt.NDArray, float]:
    """Per order values of the x-derivative of order dx and the largest tail estimate"""
    terms = ExpansionTermSet(expansion, payoff.transform, req.T, N, contour, _engine(req, expansion),
                             req.quad_order, req.quad_tol)
    def integrand(xr:npt.NDArray) -> npt.NDArray:
        v = terms.on_contour(xr, req.t)
        return v * (1j * (xr + 1j * contour))**dx if dx else v
    values, tail = inverse_fourier(integrand, req.x0, contour, R, req.panel_order)
    return values, float(np.max(tail))

def survival_terms(req:PricingRequest, expansion:SymbolExpansion, N:int, dx:int=0) -> npt.NDArray:
    """
    Gets the per order terms of the survival probability E[exp(-int_t^T gamma)]
    (or their x-derivatives). No contour quadrature is evaluated.
    """
    if _engine(req, expansion) == EEngines.HOMOGENEOUS:
        return bond_terms_homogeneous(expansion, req.tau, N, req.x0, dx)
    return bond_terms_inhomogeneous(expansion, req.t, req.T, N, req.x0, req.quad_order, dx)

def _values(req:PricingRequest, expansion:SymbolExpansion, payoff:IPayoff, contour:float, R:float,
            N:int, dx:int=0) -> tuple[npt.NDArray, float]:
    values, tail = _invert(req, expansion, payoff, contour, R, N, dx)
    if payoff.kind == EPayoffs.PUT:
        # the put pays the strike on default
        s = survival_terms(req, expansion, N, dx)
        lead = np.zeros(N + 1)
        if dx == 0: lead[0] = 1.
        values = values + payoff.default_value() * (lead - s)
    return values, tail

def _widened_values(req:PricingRequest, expansion:SymbolExpansion, payoff:IPayoff, contour:float, R:float,
                   N:int, dx:int=0) -> tuple[npt.NDArray, float, float]:
    """
    Like _values, but an automatic truncation is doubled (up to MAX_TRUNCATION)
    while the tail of a higher order term is above tolerance. A truncation
    set on the request is used as is.
    """
    while True:
        try:
            values, tail = _values(req, expansion, payoff, contour, R, N, dx)
            return values, tail, R
        except TruncationError:
            if req.R is not None or R >= MAX_TRUNCATION:
                raise
            R = min(2. * R, MAX_TRUNCATION)
            logger.debug('tail above tolerance, widening the truncation to R=%g', R)

def _elapsed(func:Callable, *args) -> float:
    start = time.perf_counter()
    func(*args)
    return time.perf_counter() - start

def _price(req:PricingRequest, expansion:SymbolExpansion, payoff:IPayoff, R:float|None=None) -> PricingResult:
    start = time.perf_counter()
    contour = payoff.default_contour() if req.contour is None else req.contour
    payoff.check_contour(contour)
    R = _truncation(req, expansion, contour) if R is None else R
    values, tail, R = _widened_values(req, expansion, payoff, contour, R, req.N)

    timings:tuple[float, ...] = ()
    if req.timings:
        timings = tuple(_elapsed(_values, req, expansion, payoff, contour, R, n) for n in range(req.N + 1))

    result = PricingResult(values)
    if req.implied_vol and payoff.kind in (EPayoffs.CALL, EPayoffs.PUT):
        result.implied_vol = implied_vol(result.total, req.t, req.T, req.x0, req.k, payoff.kind)
    result.diagnostics = Diagnostics(contour, R, tail, _engine(req, expansion), expansion.jet_budget(req.N),
                                     time.perf_counter() - start, timings)
    logger.info('%s of %s at k=%g, T-t=%g, N=%d: %.6g', payoff.kind.value, req.model.name, req.k,
                req.tau, req.N, result.total)
    return result

def price_option(req:PricingRequest) -> PricingResult:
    """
    Prices a payoff with the asymptotic expansion of order req.N.

    The expansion terms are built in Fourier space and inverted on the
    contour of the payoff. A put additionally receives the strike on
    default, K * (1 - survival), with the survival probability expanded
    in the same basis; each order carries its own part of that correction.

    Args:
        req (PricingRequest): Request. For deltas, req.k is the target log-price.

    Raises:
        ConfigurationError: On invalid contours, unsupported model forms or
            frequencies outside the strip of the jump transform
        NumericalError: On truncation, quadrature or jet failures

    Returns:
        PricingResult
    """
    if req.payoff == EPayoffs.BOND:
        return bond_price(req)
    return _price(req, _expansion(req), payoff_from_kind(req.payoff, req.k))

def price_strikes(req:PricingRequest, ks:Sequence[float]) -> list[PricingResult]:
    """
    Prices one payoff at several strikes. The expansion, the contour nodes
    and the truncation are shared between the strikes.

    Args:
        req (PricingRequest): Request, req.k is ignored
        ks (Sequence[float]): Log-strikes

    Returns:
        list[PricingResult]: One result per strike
    """
    if req.payoff == EPayoffs.BOND:
        return [bond_price(req) for _ in ks]
    expansion = _expansion(req)
    payoff = payoff_from_kind(req.payoff, 0.)
    contour = payoff.default_contour() if req.contour is None else req.contour
    R = _truncation(req, expansion, contour)
    return [_price(replace(req, k=float(k)), expansion, payoff_from_kind(req.payoff, float(k)), R) for k in ks]

def density(req:PricingRequest, y:float, at_target:bool=False) -> PricingResult:
    """
    Gets the expansion p^(N)(t, x0; T, y) of the transition density
    (with killing), i.e. the price of the payoff delta_y.

    Args:
        req (PricingRequest): Request, payoff and k are ignored
        y (float): Target log-price
        at_target (bool): Optional. Use the Taylor basis at xbar = y, the
            setting of the density error envelopes

    Returns:
        PricingResult
    """
    req = replace(req, payoff=EPayoffs.DELTA, k=float(y))
    if at_target:
        req = replace(req, family=EBasisFamilies.TAYLOR, xbar=float(y))
    return _price(req, _expansion(req), DeltaPayoff(float(y)))

def bond_price(req:PricingRequest) -> PricingResult:
    """
    Gets the survival probability E[exp(-int_t^T gamma(s, X_s) ds)], i.e. the
    price of a zero recovery defaultable bond, and its credit spread.

    The constant payoff transforms into a multiple of delta(xi); every term
    is a finite sum of xi-derivatives at 0 and no contour quadrature is done.

    Args:
        req (PricingRequest): Request, payoff and k are ignored

    Raises:
        SpreadUndefinedError: If the survival value is not positive

    Returns:
        PricingResult: Per order survival terms and the spread
    """
    start = time.perf_counter()
    expansion = _expansion(req)
    result = PricingResult(survival_terms(req, expansion, req.N))
    if result.total <= 0:
        raise SpreadUndefinedError(f'survival value {result.total:.6g} is not positive, the spread is undefined')
    result.spread = -np.log(result.total) / req.tau
    result.diagnostics = Diagnostics(engine=_engine(req, expansion), jet_order=expansion.jet_budget(req.N),
                                     elapsed=time.perf_counter() - start)
    logger.info('survival of %s, T-t=%g, N=%d: %.6g', req.model.name, req.tau, req.N, result.total)
    return result

def greeks(req:PricingRequest) -> Greeks:
    """
    Gets delta and gamma of v^(N) with respect to S = exp(x0) by
    differentiating under the inverse transform (multiplication by i xi).

    Args:
        req (PricingRequest): Call or put request

    Returns:
        Greeks
    """
    if req.payoff not in (EPayoffs.CALL, EPayoffs.PUT):
        raise ValueError(f'greeks need a call or put, got {req.payoff.value}')
    expansion = _expansion(req)
    payoff = payoff_from_kind(req.payoff, req.k)
    contour = payoff.default_contour() if req.contour is None else req.contour
    payoff.check_contour(contour)
    R = _truncation(req, expansion, contour)
    d1_terms, _, R = _widened_values(req, expansion, payoff, contour, R, req.N, 1)
    d1 = float(np.sum(d1_terms))
    d2 = float(np.sum(_widened_values(req, expansion, payoff, contour, R, req.N, 2)[0]))
    S = np.exp(req.x0)
    return Greeks(d1 / S, (d2 - d1) / S**2)
