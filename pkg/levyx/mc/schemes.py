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
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np
import numpy.typing as npt
from scipy.special import gammaincinv

from levyx.enums import EJumpMeasures, ESchemes
from levyx.exceptions import SchemeMismatchError
from levyx.models import ModelSpec
from .config import SimulationConfig

logger = logging.getLogger(__name__)

_U_MIN = 1e-300
_U_MAX = 1. - 2.**-53

@dataclass(frozen=True)
class SimulatedPaths:
    """
    Terminal states of simulated paths. Antithetic runs store all base
    paths first and their mirrored partners in the same order after them.
    """
    x:npt.NDArray
    """Log-price X_T, also for killed paths"""
    hazard:npt.NDArray
    """Integrated default intensity int_t^T gamma(s, X_s) ds"""
    survived:npt.NDArray
    """False if the path defaulted before T"""
    steps:int
    """Number of time steps"""
    antithetic:bool = False
    """Flag if the paths come in mirrored pairs"""

    @property
    def discount(self) -> npt.NDArray:
        """Survival probability of every path given its trajectory, exp(-hazard)"""
        return np.exp(-self.hazard)

class _Draws:
    """Standard draws of one block, mirrored for antithetic runs"""

    def __init__(self, rng:np.random.Generator, n:int, antithetic:bool):
        self.rng = rng
        self.antithetic = antithetic
        self.m = n // 2 if antithetic else n

    def normal(self) -> npt.NDArray:
        z = self.rng.standard_normal(self.m)
        return np.concatenate([z, -z]) if self.antithetic else z

    def uniform(self) -> npt.NDArray:
        u = self.rng.random(self.m)
        return np.concatenate([u, 1. - u]) if self.antithetic else u

    def gamma(self, shape:npt.NDArray, scale:float) -> npt.NDArray:
        if not self.antithetic:
            return self.rng.gamma(shape, scale)
        u = np.clip(self.uniform(), _U_MIN, _U_MAX)
        positive = shape > 0
        g = gammaincinv(np.where(positive, shape, 1.), u)
        return np.where(positive, g, 0.) * scale

def check_scheme(model:ModelSpec, scheme:ESchemes):
    """
    Checks that a scheme can simulate a model.

    Raises:
        SchemeMismatchError: If the euler scheme gets non-Gaussian jumps or the
            vg scheme gets no Variance-Gamma jumps
    """
    kind = None if model.measure is None else model.measure.kind
    if scheme == ESchemes.EULER_GAUSSIAN_JUMP and kind not in (None, EJumpMeasures.GAUSSIAN):
        raise SchemeMismatchError(f"scheme '{scheme.value}' needs Gaussian jumps, model "
                                  f"'{model.name}' has '{kind.value}' jumps")
    if scheme == ESchemes.VARIANCE_GAMMA_INCREMENT and kind != EJumpMeasures.VARIANCE_GAMMA:
        raise SchemeMismatchError(f"scheme '{scheme.value}' needs Variance-Gamma jumps, model "
                                  f"'{model.name}' has {'none' if kind is None else repr(kind.value)}")

def _euler_step(model:ModelSpec, draws:_Draws, s:float, dt:float, x:npt.NDArray) -> npt.NDArray:
    a = model.a(s, x)
    x_new = x + model.drift(s, x) * dt + np.sqrt(2. * a * dt) * draws.normal()
    m = model.measure
    if m is not None and not model.jump_multiplier.is_zero:
        rate = m.intensity * model.jump_multiplier(s, x)
        jumps = draws.uniform() < np.minimum(rate * dt, 1.)
        marks = m.mean + m.std * draws.normal()
        x_new = x_new + np.where(jumps, marks, 0.) - rate * m.mean * dt
    return x_new

def _vg_step(model:ModelSpec, draws:_Draws, s:float, dt:float, x:npt.NDArray) -> npt.NDArray:
    m = model.measure
    lp, lm = m.lam_plus, m.lam_minus
    intensity = model.jump_multiplier(s, x)
    shape = intensity * dt / m.kappa
    b = -intensity / m.kappa * (np.log(lm / (1. + lm)) + np.log(lp / (lp - 1.)))
    a = model.a(s, x)
    x_new = x + (model.gamma(s, x) - a + b) * dt + np.sqrt(2. * a * dt) * draws.normal()
    return x_new + draws.gamma(shape, 1. / lp) - draws.gamma(shape, 1. / lm)

_STEPS:dict[ESchemes, Callable[..., npt.NDArray]] = {
    ESchemes.EULER_GAUSSIAN_JUMP: _euler_step,
    ESchemes.VARIANCE_GAMMA_INCREMENT: _vg_step,
}

def _block(model:ModelSpec, scheme:ESchemes, seed:np.random.SeedSequence, n:int, antithetic:bool,
           t:float, dt:float, steps:int, x0:float) -> tuple[npt.NDArray, npt.NDArray, npt.NDArray]:
    draws = _Draws(np.random.Generator(np.random.Philox(seed)), n, antithetic)
    step = _STEPS[scheme]
    x = np.full(n, float(x0))
    hazard = np.zeros(n)
    g_old = np.broadcast_to(model.gamma(t, x), x.shape)
    for i in range(steps):
        s = t + i * dt
        x = step(model, draws, s, dt, x)
        g_new = np.broadcast_to(model.gamma(s + dt, x), x.shape)
        hazard += 0.5 * (g_old + g_new) * dt
        g_old = g_new
    # canonical construction: default once the hazard exceeds an Exp(1) draw
    e = -np.log1p(-np.clip(draws.uniform(), 0., _U_MAX))
    return x, hazard, hazard <= e

def simulate_paths(model:ModelSpec, config:SimulationConfig, T:float, t:float=0.,
                   x0:float=0.) -> SimulatedPaths:
    """
    Simulates the log-price from (t, x0) to T.

    The euler scheme steps
        X += mu dt + sqrt(2 a dt) Z + J - lambda c m dt
    with the martingale drift mu, a Bernoulli(lambda c dt) thinned jump J ~ N(m, std^2)
    and c the jump multiplier. The vg scheme steps
        X += (gamma - a + b) dt + sqrt(2 a dt) Z + G+ - G-
    with G+- ~ Gamma(c dt / kappa, 1 / lam+-) and the drift b making exp(X)
    a martingale. Both accumulate the default intensity by the trapezoid rule.

    Args:
        model (ModelSpec): Model
        config (SimulationConfig): Scheme, step, paths and seed
        T (float): Final time
        t (float): Optional. Initial time
        x0 (float): Optional. Initial log-price

    Raises:
        SchemeMismatchError: If the scheme cannot simulate the model
        ValueError: If t >= T

    Returns:
        SimulatedPaths
    """
    if not t < T:
        raise ValueError(f't must be < T, got t = {t}, T = {T}')
    check_scheme(model, config.scheme)
    start = time.perf_counter()
    steps = config.steps(T - t)
    dt = (T - t) / steps
    sizes = config.blocks()
    seeds = np.random.SeedSequence(config.seed).spawn(len(sizes))
    logger.debug('%s: %d paths in %d blocks, %d steps of %.3g, %d threads', config.scheme.value,
                 config.paths, len(sizes), steps, dt, config.workers)

    def run(i:int):
        return _block(model, config.scheme, seeds[i], sizes[i], config.antithetic, t, dt, steps, x0)

    if config.workers > 1 and len(sizes) > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(run, range(len(sizes))))
    else:
        results = [run(i) for i in range(len(sizes))]

    def join(j:int) -> npt.NDArray:
        parts = [r[j] for r in results]
        if config.antithetic:
            halves = [(p[:p.size // 2], p[p.size // 2:]) for p in parts]
            parts = [h[0] for h in halves] + [h[1] for h in halves]
        return np.concatenate(parts)

    paths = SimulatedPaths(join(0), join(1), join(2), steps, config.antithetic)
    logger.info("simulated %d paths of '%s' in %.2f s", config.paths, model.name,
                time.perf_counter() - start)
    return paths
