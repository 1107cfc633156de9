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
from typing import Sequence

import numpy as np
import numpy.typing as npt

from levyx.enums import EPayoffs
from levyx.models import ModelSpec
from levyx.protocols import IPayoff
from .config import MCEstimate, SimulationConfig
from .schemes import SimulatedPaths, simulate_paths

logger = logging.getLogger(__name__)

def payoff_samples(payoff:IPayoff, paths:SimulatedPaths) -> npt.NDArray:
    """
    Gets the discounted payoff of every path,

        exp(-hazard) h(X_T) + (1 - exp(-hazard)) h_default,

    i.e. the payoff conditioned on the trajectory, where h_default is
    paid on default (the strike for puts).

    Raises:
        ValueError: For delta payoffs, see mc_density
    """
    if payoff.kind == EPayoffs.DELTA:
        raise ValueError('a delta payoff has no samples, use mc_density')
    d = paths.discount
    return d * payoff(paths.x) + (1. - d) * payoff.default_value()

def mc_price_many(model:ModelSpec, config:SimulationConfig, payoffs:Sequence[IPayoff],
                  t:float, T:float, x0:float=0.) -> list[MCEstimate]:
    """
    Prices several payoffs on one set of simulated paths.

    Args:
        model (ModelSpec): Model
        config (SimulationConfig): Simulation settings
        payoffs (Sequence[IPayoff]): Call, put or constant payoffs
        t (float): Valuation time
        T (float): Maturity
        x0 (float): Optional. Log-price at t

    Raises:
        SchemeMismatchError: If the scheme cannot simulate the model

    Returns:
        list[MCEstimate]: One estimate per payoff
    """
    start = time.perf_counter()
    paths = simulate_paths(model, config, T, t, x0)
    elapsed = time.perf_counter() - start
    out = [MCEstimate.from_samples(payoff_samples(p, paths), config.antithetic, elapsed) for p in payoffs]
    for p, e in zip(payoffs, out):
        logger.debug('%s: %.6g +- %.2g', p, e.mean, e.se)
    return out

def mc_price(model:ModelSpec, config:SimulationConfig, payoff:IPayoff, t:float, T:float,
             x0:float=0.) -> MCEstimate:
    """
    Prices a payoff by Monte Carlo simulation.

    Puts include the strike paid on default, so that the estimate
    matches price_option.

    Args:
        model (ModelSpec): Model
        config (SimulationConfig): Simulation settings
        payoff (IPayoff): Call, put or constant payoff
        t (float): Valuation time
        T (float): Maturity
        x0 (float): Optional. Log-price at t

    Returns:
        MCEstimate
    """
    return mc_price_many(model, config, [payoff], t, T, x0)[0]

def mc_density(model:ModelSpec, config:SimulationConfig, t:float, T:float, edges:npt.ArrayLike,
               x0:float=0.) -> tuple[npt.NDArray, list[MCEstimate]]:
    """
    Estimates the transition density of the killed process by a histogram
    weighted with the survival probability of every path.

    Args:
        model (ModelSpec): Model
        config (SimulationConfig): Simulation settings
        t (float): Initial time
        T (float): Final time
        edges (npt.ArrayLike): Increasing bin edges in log-price
        x0 (float): Optional. Log-price at t

    Returns:
        tuple[npt.NDArray, list[MCEstimate]]: bin centers, density estimate per bin
    """
    edges = np.asarray(edges, dtype=float)
    if edges.ndim != 1 or edges.size < 2 or np.any(np.diff(edges) <= 0):
        raise ValueError('edges must be an increasing sequence of at least 2 values')
    start = time.perf_counter()
    paths = simulate_paths(model, config, T, t, x0)
    elapsed = time.perf_counter() - start
    d = paths.discount
    out = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        inside = (paths.x >= lo) & (paths.x < hi)
        out.append(MCEstimate.from_samples(np.where(inside, d, 0.) / (hi - lo), config.antithetic, elapsed))
    return 0.5 * (edges[:-1] + edges[1:]), out
