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
from dataclasses import dataclass, field
from math import factorial, inf
from typing import Any, Callable, Optional

import numpy as np
import numpy.typing as npt
from scipy import integrate

from levyx.enums import EJumpMeasures
from levyx.exceptions import DomainError
from levyx.jets import Jet, exp, log

logger = logging.getLogger(__name__)

_SMALL = 1e-3

TAIL_TOL = 1e-14
"""Weighted tail of a numeric density treated as zero"""
MAX_TAIL_BOUND = 1024.
"""Largest derived truncation of a numeric density"""

def _check_strip(xi:Any, lo:float, hi:float, name:str):
    im = np.imag(xi.base if isinstance(xi, Jet) else xi)
    if np.any(im <= lo) or np.any(im >= hi):
        raise DomainError(f'{name} jump transform needs Im(xi) in ({lo}, {hi}), got Im(xi) in '
                          f'[{np.min(im)}, {np.max(im)}]')

def _grouped_kernel(w:complex) -> complex:
    """exp(w) - 1 - w without cancellation for small |w|"""
    if abs(w) < _SMALL:
        return w * w * (1/2 + w * (1/6 + w * (1/24 + w / 120)))
    return np.exp(w) - 1. - w

def _grouped_expm1(w:complex) -> complex:
    """exp(w) - 1 without cancellation for small |w|"""
    if abs(w) < _SMALL:
        return w * (1. + w * (1/2 + w * (1/6 + w / 24)))
    return np.exp(w) - 1.

@dataclass(frozen=True)
class GaussianJumps:
    """
    Gaussian Levy measure nu(dz) = intensity * N(mean, std^2)(dz).

    Args:
        intensity: Jump intensity per year (lambda >= 0)
        mean: Mean jump size m
        std: Jump size standard deviation (eta > 0)
    """
    intensity:float
    """Jump intensity per year"""
    mean:float
    """Mean jump size"""
    std:float
    """Standard deviation of the jump size"""
    kind:EJumpMeasures = field(default=EJumpMeasures.GAUSSIAN, init=False)

    def __post_init__(self):
        if self.intensity < 0:
            raise ValueError(f'intensity must be >= 0, got {self.intensity}')
        if self.std <= 0:
            raise ValueError(f'std must be > 0, got {self.std}')

    def strip(self) -> tuple[float, float]:
        return (-inf, inf)

    def check_strip(self, xi:Any) -> None:
        pass

    def psi(self, z:Any) -> Any:
        lam, m, eta = self.intensity, self.mean, self.std
        iz = 1j * z
        return lam * (exp(iz * m - 0.5 * eta**2 * (z * z)) - 1.) - lam * m * iz

    def compensator(self) -> float:
        m, eta = self.mean, self.std
        return self.intensity * (np.exp(m + 0.5 * eta**2) - 1. - m)

    def first_moment(self) -> float:
        return self.intensity * self.mean

    def density(self, z:npt.ArrayLike) -> npt.NDArray:
        z = np.asarray(z, dtype=float)
        return (self.intensity / (self.std * np.sqrt(2 * np.pi))
                * np.exp(-0.5 * ((z - self.mean) / self.std)**2))

    def numeric_twin(self) -> 'NumericDensityJumps':
        """Gets the same measure as a NumericDensityJumps for quadrature checks"""
        w = abs(self.mean) + 10. * self.std
        return NumericDensityJumps(self.density, (-w, w))

@dataclass(frozen=True)
class VarianceGammaJumps:
    """
    Variance-Gamma Levy measure
        nu(dz) = exp(-lam_minus |z|) / (kappa |z|) dz   for z < 0
        nu(dz) = exp(-lam_plus z) / (kappa z) dz        for z > 0
    with lam_(+/-) = (sqrt(theta^2 kappa^2 / 4 + rho^2 kappa / 2) +/- theta kappa / 2)^-1.

    Args:
        theta: Drift of the subordinated Brownian motion
        rho: Volatility of the subordinated Brownian motion (>= 0)
        kappa: Variance rate of the Gamma subordinator (> 0)
    """
    theta:float
    """Drift of the subordinated Brownian motion"""
    rho:float
    """Volatility of the subordinated Brownian motion"""
    kappa:float
    """Variance rate of the Gamma subordinator"""
    kind:EJumpMeasures = field(default=EJumpMeasures.VARIANCE_GAMMA, init=False)

    def __post_init__(self):
        if self.kappa <= 0:
            raise ValueError(f'kappa must be > 0, got {self.kappa}')
        if self.rho < 0:
            raise ValueError(f'rho must be >= 0, got {self.rho}')
        s = np.sqrt(self.theta**2 * self.kappa**2 / 4 + self.rho**2 * self.kappa / 2)
        h = self.theta * self.kappa / 2
        if s + h <= 0 or s - h <= 0:
            raise ValueError(f'theta={self.theta}, rho={self.rho}, kappa={self.kappa} give a one-sided measure')
        if self.lam_plus <= 1:
            raise ValueError(f'lam_plus must be > 1 for exp(z) to be integrable, got {self.lam_plus}')

    @property
    def lam_plus(self) -> float:
        """Decay rate of positive jumps"""
        s = np.sqrt(self.theta**2 * self.kappa**2 / 4 + self.rho**2 * self.kappa / 2)
        return 1. / (s + self.theta * self.kappa / 2)

    @property
    def lam_minus(self) -> float:
        """Decay rate of negative jumps"""
        s = np.sqrt(self.theta**2 * self.kappa**2 / 4 + self.rho**2 * self.kappa / 2)
        return 1. / (s - self.theta * self.kappa / 2)

    def strip(self) -> tuple[float, float]:
        return (-self.lam_plus, self.lam_minus)

    def check_strip(self, xi:Any) -> None:
        _check_strip(xi, -self.lam_plus, self.lam_minus, 'Variance-Gamma')

    def psi(self, z:Any) -> Any:
        lp, lm, k = self.lam_plus, self.lam_minus, self.kappa
        iz = 1j * z
        return -(log(1. - iz / lp) + log(1. + iz / lm)) / k - iz * self.first_moment()

    def compensator(self) -> float:
        lp, lm, k = self.lam_plus, self.lam_minus, self.kappa
        return -(np.log(1. - 1. / lp) + np.log(1. + 1. / lm)) / k - self.first_moment()

    def first_moment(self) -> float:
        return (1. / self.lam_plus - 1. / self.lam_minus) / self.kappa

    def density(self, z:npt.ArrayLike) -> npt.NDArray:
        z = np.asarray(z, dtype=float)
        az = np.where(z == 0, np.inf, np.abs(z))
        rate = np.where(z < 0, self.lam_minus, self.lam_plus)
        return np.exp(-rate * az) / (self.kappa * az)

    def numeric_twin(self) -> 'NumericDensityJumps':
        """Gets the same measure as a NumericDensityJumps for quadrature checks"""
        return NumericDensityJumps(self.density, (-40. / self.lam_minus, 40. / self.lam_plus))

@dataclass(frozen=True)
class NumericDensityJumps:
    """
    Levy measure given by a density, integrated by adaptive quadrature on
    bounds. Integrands are written in the grouped form exp(i xi z) - 1 - i xi z
    so densities with a 1/|z| singularity at the origin are admissible.

    Args:
        density: z -> nu(z) >= 0, vectorized
        bounds: Optional. Integration truncation (lo, hi) with lo < 0 < hi.
            If None, each side is doubled from 1 until the weighted tail
            (1 + z^2)(1 + e^z) nu(z) is below TAIL_TOL on the next band.
    """
    density:Callable[[npt.ArrayLike], npt.NDArray]
    """Levy density"""
    bounds:Optional[tuple[float, float]] = None
    """Integration truncation"""
    kind:EJumpMeasures = field(default=EJumpMeasures.NUMERIC, init=False)

    def __post_init__(self):
        if self.bounds is None:
            object.__setattr__(self, 'bounds', (-self._tail_bound(-1.), self._tail_bound(1.)))
            logger.debug('numeric jump density truncated to %s', self.bounds)
        lo, hi = self.bounds
        if not lo < 0 < hi:
            raise ValueError(f'bounds must satisfy lo < 0 < hi, got {self.bounds}')
        grid = np.linspace(lo, hi, 101)
        if np.any(self.density(grid[grid != 0]) < 0):
            raise ValueError('density must be nonnegative')
        small = self._real(lambda z: min(1., z * z) * self.density(z))
        large = self._real(lambda z: np.exp(z) * self.density(z) if abs(z) >= 1 else 0.)
        if not (np.isfinite(small) and np.isfinite(large)):
            raise ValueError(f'density violates the integrability conditions: '
                             f'int min(1,z^2) nu = {small}, int_(|z|>=1) e^z nu = {large}')

    def _tail_bound(self, side:float) -> float:
        L = 1.
        while L <= MAX_TAIL_BOUND:
            z = side * np.linspace(L, 2. * L, 65)
            w = (1. + z * z) * (1. + np.exp(z)) * np.abs(self.density(z))
            if np.all(np.isfinite(w)) and np.max(w) < TAIL_TOL:
                return L
            L *= 2.
        raise ValueError(f'density tail does not fall below {TAIL_TOL} within |z| <= {MAX_TAIL_BOUND:g}, '
                         'give explicit bounds')

    def _real(self, func:Callable[[float], float]) -> float:
        lo, hi = self.bounds
        opts = dict(limit=200, epsabs=1e-14, epsrel=1e-12)
        return integrate.quad(func, lo, 0., **opts)[0] + integrate.quad(func, 0., hi, **opts)[0]

    def _complex(self, func:Callable[[float], complex]) -> complex:
        re = self._real(lambda z: np.real(func(z)))
        im = self._real(lambda z: np.imag(func(z)))
        return re + 1j * im

    def strip(self) -> tuple[float, float]:
        return (-inf, inf)

    def check_strip(self, xi:Any) -> None:
        pass

    def _psi_derivative(self, xi:complex, j:int) -> complex:
        nu = self.density
        if j == 0:
            return self._complex(lambda z: _grouped_kernel(1j * xi * z) * nu(z))
        if j == 1:
            return self._complex(lambda z: 1j * z * _grouped_expm1(1j * xi * z) * nu(z))
        return self._complex(lambda z: (1j * z)**j * np.exp(1j * xi * z) * nu(z))

    def psi(self, z:Any) -> Any:
        if isinstance(z, Jet):
            base = np.atleast_1d(z.base)
            c = np.empty((z.order + 1, base.size), dtype=complex)
            for n, xi in enumerate(base):
                for j in range(z.order + 1):
                    c[j, n] = self._psi_derivative(complex(xi), j) / factorial(j)
            return Jet(z.base, c.reshape((z.order + 1,) + z.base.shape))
        xi = np.asarray(z, dtype=complex)
        out = np.array([self._psi_derivative(complex(v), 0) for v in xi.ravel()])
        return out.reshape(xi.shape) if xi.ndim else out[0]

    def compensator(self) -> float:
        return self._real(lambda z: np.real(_grouped_kernel(z)) * self.density(z))

    def first_moment(self) -> float:
        return self._real(lambda z: z * self.density(z))
