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
from typing import Callable, Optional

import numpy as np
import numpy.typing as npt

from levyx.auxiliary import central_difference, fd_step
from levyx.exceptions import ConfigurationError

logger = logging.getLogger(__name__)

@dataclass(frozen=True)
class _Const:
    value:float
    def __call__(self, t, x):
        return np.full(np.shape(x), self.value, dtype=float) if np.ndim(x) else float(self.value)

@dataclass(frozen=True)
class _ConstDx:
    value:float
    def __call__(self, t, x, n):
        return self.value if n == 0 else 0.

@dataclass(frozen=True)
class _Exp:
    scale:float
    rate:float
    def __call__(self, t, x):
        return self.scale * np.exp(self.rate * np.asarray(x, dtype=float))

@dataclass(frozen=True)
class _ExpDx:
    scale:float
    rate:float
    def __call__(self, t, x, n):
        return self.scale * self.rate**n * np.exp(self.rate * x)

@dataclass(frozen=True)
class Coefficient:
    """
    Model coefficient c(t, x), optionally with analytic x-derivatives.

    Args:
        func: (t, x) -> c(t, x), vectorized in x
        dx: Optional. (t, x, n) -> d^n c / dx^n (t, x)
        time_homogeneous: Optional. Flag if c does not depend on t
        label: Optional. Text used in messages and emitted configurations
    """
    func:Callable[[float, npt.ArrayLike], npt.ArrayLike]
    """c(t, x)"""
    dx:Optional[Callable[[float, float, int], float]] = None
    """Analytic x-derivatives (t, x, n) -> d^n c / dx^n"""
    time_homogeneous:bool = True
    """Flag if c does not depend on t"""
    label:str = ''
    """Text used in messages and emitted configurations"""

    @classmethod
    def constant(cls, value:float) -> 'Coefficient':
        """Gets the coefficient c(t, x) = value"""
        return cls(_Const(float(value)), _ConstDx(float(value)), True, f'{value}')

    @classmethod
    def exponential(cls, scale:float, rate:float) -> 'Coefficient':
        """Gets the coefficient c(t, x) = scale * exp(rate * x)"""
        return cls(_Exp(scale, rate), _ExpDx(scale, rate), True, f'{scale}*exp({rate}*x)')

    def __call__(self, t:float, x:npt.ArrayLike) -> npt.ArrayLike:
        return self.func(t, x)

    @property
    def is_zero(self) -> bool:
        """True if this is the constant 0"""
        return isinstance(self.func, _Const) and self.func.value == 0.

    def scaled(self, factor:float) -> 'Coefficient':
        """Gets factor * c"""
        if factor == 0.:
            return Coefficient.constant(0.)
        if isinstance(self.func, _Const):
            return Coefficient.constant(factor * self.func.value)
        if isinstance(self.func, _Exp):
            return Coefficient.exponential(factor * self.func.scale, self.func.rate)
        func, dx = self.func, self.dx
        return Coefficient(lambda t, x: factor * func(t, x),
                           None if dx is None else (lambda t, x, n: factor * dx(t, x, n)),
                           self.time_homogeneous, f'{factor}*({self.label})')

    def derivative(self, t:float, x:float, n:int, finite_differences:bool=False) -> float:
        """
        Gets the n-th x-derivative at (t, x).

        Args:
            t (float): Time
            x (float): Log-price
            n (int): Derivative order
            finite_differences (bool): Optional. Allow central differences when no
                analytic derivative is available.

        Raises:
            ConfigurationError: If no analytic derivative exists and finite
                differences are not allowed

        Returns:
            float: d^n c / dx^n (t, x)
        """
        if n == 0:
            return float(self.func(t, x))
        if self.dx is not None:
            return float(self.dx(t, x, n))
        if not finite_differences:
            raise ConfigurationError(f"coefficient '{self.label}' has no analytic x-derivatives; "
                                     f"enable finite differences to use central differences")
        if n > 4:
            logger.warning('finite difference derivative of order %d is inaccurate', n)
        return central_difference(lambda y: float(self.func(t, y)), x, n, fd_step(n, x))
