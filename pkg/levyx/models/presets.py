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

from typing import Callable

import numpy as np

from levyx.exceptions import ConfigurationError
from .coefficient import Coefficient
from .levy_measure import GaussianJumps, VarianceGammaJumps
from .model_spec import ModelSpec

RANDOM_CEV_GAUSS_RANGES = {'delta': (0., 0.6), 'beta': (0., 1.), 'intensity': (0., 1.),
                           'mean': (-1., 0.), 'std': (0., 1.)}
"""Parameter ranges of the random-parameter CEV-like Gaussian-jump experiments"""

def cev_gauss(delta:float=0.2, beta:float=0.25, intensity:float=0.3,
              mean:float=-0.1, std:float=0.4) -> ModelSpec:
    """
    CEV-like local volatility with state dependent Gaussian jumps:
        a = delta^2 / 2 * exp(2(beta - 1)x),  nu = exp(2(beta - 1)x) N(dz),  gamma = 0
    """
    f = Coefficient.exponential(1., 2. * (beta - 1.))
    params = (('delta', delta), ('beta', beta), ('intensity', intensity), ('mean', mean), ('std', std))
    return ModelSpec.proportional(f, A=0.5 * delta**2, Gamma=0., W=1.,
                                  measure=GaussianJumps(intensity, mean, std),
                                  name='cev-gauss', params=params)

def cev_vg(delta:float=0., beta:float=0.25, theta:float=-0.3,
           rho:float=0.3, kappa:float=0.15) -> ModelSpec:
    """
    CEV-like local volatility with state dependent Variance-Gamma jumps:
        a = delta^2 / 2 * exp(2(beta - 1)x),  nu = exp(2(beta - 1)x) VG(dz),  gamma = 0
    """
    f = Coefficient.exponential(1., 2. * (beta - 1.))
    params = (('delta', delta), ('beta', beta), ('theta', theta), ('rho', rho), ('kappa', kappa))
    return ModelSpec.proportional(f, A=0.5 * delta**2, Gamma=0., W=1.,
                                  measure=VarianceGammaJumps(theta, rho, kappa),
                                  name='cev-vg', params=params)

def cev_gauss_default(delta:float=0.2, beta:float=0.25, intensity:float=0.3,
                      mean:float=-0.1, std:float=0.4, gamma0:float=0.02) -> ModelSpec:
    """cev_gauss with default intensity gamma(x) = gamma0 * exp(-x)"""
    base = cev_gauss(delta, beta, intensity, mean, std)
    return ModelSpec(a=base.a, gamma=Coefficient.exponential(gamma0, -1.),
                     jump_multiplier=base.jump_multiplier, measure=base.measure,
                     name='cev-gauss-default', params=base.params + (('gamma0', gamma0),))

def black_scholes(sigma:float=0.2) -> ModelSpec:
    """Constant volatility, no jumps, no default"""
    return ModelSpec(a=Coefficient.constant(0.5 * sigma**2), name='black-scholes',
                     params=(('sigma', sigma),))

def merton(a:float=0.02, intensity:float=0.3, mean:float=-0.1, std:float=0.4,
           gamma:float=0.) -> ModelSpec:
    """Constant coefficient diffusion with Gaussian jumps and constant default intensity"""
    return ModelSpec(a=Coefficient.constant(a), gamma=Coefficient.constant(gamma),
                     jump_multiplier=Coefficient.constant(1.), measure=GaussianJumps(intensity, mean, std),
                     name='merton', params=(('a', a), ('intensity', intensity), ('mean', mean),
                                            ('std', std), ('gamma', gamma)))

def random_cev_gauss(rng:np.random.Generator) -> ModelSpec:
    """Draws cev_gauss parameters uniformly from RANDOM_CEV_GAUSS_RANGES"""
    kw = {k: float(rng.uniform(lo, hi)) for k, (lo, hi) in RANDOM_CEV_GAUSS_RANGES.items()}
    kw['std'] = max(kw['std'], 1e-3)
    return cev_gauss(**kw)

PRESETS:dict[str, Callable[..., ModelSpec]] = {
    'cev-gauss': cev_gauss,
    'cev-vg': cev_vg,
    'cev-gauss-default': cev_gauss_default,
    'black-scholes': black_scholes,
    'merton': merton,
}
"""Named models available to the command line"""

def get_preset(name:str, **kwargs:float) -> ModelSpec:
    """
    Gets a named model.

    Args:
        name (str): One of PRESETS
        **kwargs: Parameter overrides

    Raises:
        ConfigurationError: If the name is unknown

    Returns:
        ModelSpec
    """
    if name not in PRESETS:
        raise ConfigurationError(f"unknown preset '{name}', choose from {sorted(PRESETS)}")
    return PRESETS[name](**kwargs)
