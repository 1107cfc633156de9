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
from math import exp, sqrt

from scipy import optimize, stats

from levyx.enums import EPayoffs
from levyx.exceptions import NumericalError, OutOfRangeError

logger = logging.getLogger(__name__)

def black_scholes(sigma:float, tau:float, x0:float, k:float, payoff:EPayoffs=EPayoffs.CALL) -> float:
    """
    Gets the Black-Scholes price with zero interest rate.

    Args:
        sigma (float): Volatility
        tau (float): Time to maturity
        x0 (float): Log-spot
        k (float): Log-strike
        payoff (EPayoffs): Optional. CALL or PUT

    Returns:
        float: Price
    """
    S, K = exp(x0), exp(k)
    s = sigma * sqrt(tau)
    if s <= 0:
        return max(S - K, 0.) if payoff == EPayoffs.CALL else max(K - S, 0.)
    d1 = (x0 - k) / s + 0.5 * s
    d2 = d1 - s
    if payoff == EPayoffs.CALL:
        return S * stats.norm.cdf(d1) - K * stats.norm.cdf(d2)
    if payoff == EPayoffs.PUT:
        return K * stats.norm.cdf(-d2) - S * stats.norm.cdf(-d1)
    raise ValueError(f'payoff must be call or put, got {payoff}')

def black_scholes_delta(sigma:float, tau:float, x0:float, k:float, payoff:EPayoffs=EPayoffs.CALL) -> float:
    """Gets dV/dS of the zero rate Black-Scholes price"""
    s = sigma * sqrt(tau)
    d1 = (x0 - k) / s + 0.5 * s
    return stats.norm.cdf(d1) - (0. if payoff == EPayoffs.CALL else 1.)

def price_bounds(x0:float, k:float, payoff:EPayoffs) -> tuple[float, float]:
    """Gets the no-arbitrage bounds of a zero rate call or put"""
    S, K = exp(x0), exp(k)
    if payoff == EPayoffs.CALL:
        return max(S - K, 0.), S
    return max(K - S, 0.), K

def implied_vol(price:float, t:float, T:float, x0:float, k:float, payoff:EPayoffs=EPayoffs.PUT,
                tol:float=1e-10) -> float:
    """
    Gets the Black-Scholes volatility reproducing a price.

    Args:
        price (float): Call or put price
        t (float): Valuation time
        T (float): Maturity
        x0 (float): Log-spot
        k (float): Log-strike
        payoff (EPayoffs): Optional. CALL or PUT
        tol (float): Optional. Tolerance in price

    Raises:
        OutOfRangeError: If price violates the no-arbitrage bounds
        NumericalError: If the root finder does not reach tol

    Returns:
        float: Implied volatility
    """
    payoff = EPayoffs(payoff)
    if payoff not in (EPayoffs.CALL, EPayoffs.PUT):
        raise ValueError(f'payoff must be call or put, got {payoff.value}')
    tau = T - t
    if tau <= 0:
        raise ValueError(f't must be < T, got t={t}, T={T}')
    lo, hi = price_bounds(x0, k, payoff)
    if not lo < price < hi:
        raise OutOfRangeError(f'{payoff.value} price {price:.6g} (S={exp(x0):.6g}, K={exp(k):.6g}) violates '
                              f'the no-arbitrage bounds ({lo:.6g}, {hi:.6g})')

    f = lambda s: black_scholes(s, tau, x0, k, payoff) - price
    upper = 1.
    while f(upper) < 0.:
        upper *= 2.
        if upper > 1e3:
            raise OutOfRangeError(f'{payoff.value} price {price:.6g} needs a volatility above {upper:g}')
    try:
        sigma = optimize.brentq(f, 1e-10, upper, xtol=1e-15, maxiter=500)
    except ValueError as e:
        raise OutOfRangeError(f'{payoff.value} price {price:.6g} is too close to its intrinsic value '
                              f'to be inverted: {e}') from e
    if abs(f(sigma)) > tol:
        raise NumericalError(f'implied volatility did not converge, residual {abs(f(sigma)):.3g}')
    logger.debug('implied vol of %s price %.6g at k=%g: %.6g', payoff.value, price, k, sigma)
    return sigma
