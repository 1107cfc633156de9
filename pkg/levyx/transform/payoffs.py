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

from dataclasses import dataclass
from math import pi, sqrt
from typing import Any

import numpy as np
import numpy.typing as npt

from levyx.enums import EPayoffs
from levyx.exceptions import ContourError
from levyx.jets import DeltaCombination, exp
from levyx.protocols import IPayoff

_SQRT_2PI = sqrt(2. * pi)

def _strike_transform(k:float, z:Any) -> Any:
    return -exp(k - 1j * k * z) / (_SQRT_2PI * (1j * z + z * z))

class _Payoff:

    def check_contour(self, xi_i:float):
        lo, hi = self.strip()
        if not lo < xi_i < hi:
            raise ContourError(f'contour Im(xi) = {xi_i} of a {self.kind.value} payoff must lie in ({lo}, {hi})')

@dataclass(frozen=True)
class CallPayoff(_Payoff):
    """
    European call (e^x - e^k)^+ in log-price x and log-strike k.

    Args:
        k: Log-strike
    """
    k:float
    """Log-strike"""
    kind = EPayoffs.CALL

    def strip(self) -> tuple[float, float]:
        return (-np.inf, -1.)

    def default_contour(self) -> float:
        return -1.5

    def default_value(self) -> float:
        return 0.

    def transform(self, z:Any) -> Any:
        """-exp(k - i k xi) / (sqrt(2 pi) (i xi + xi^2))"""
        return _strike_transform(self.k, z)

    def __call__(self, x:npt.ArrayLike) -> npt.NDArray:
        return np.maximum(np.exp(np.asarray(x, dtype=float)) - np.exp(self.k), 0.)

@dataclass(frozen=True)
class PutPayoff(_Payoff):
    """
    European put (e^k - e^x)^+. The put pays the full strike on default,
    which the pricing layer adds through the survival probability.

    Args:
        k: Log-strike
    """
    k:float
    """Log-strike"""
    kind = EPayoffs.PUT

    def strip(self) -> tuple[float, float]:
        return (0., np.inf)

    def default_contour(self) -> float:
        return 0.5

    def default_value(self) -> float:
        return float(np.exp(self.k))

    def transform(self, z:Any) -> Any:
        """Same rational form as the call, valid for Im(xi) > 0"""
        return _strike_transform(self.k, z)

    def __call__(self, x:npt.ArrayLike) -> npt.NDArray:
        return np.maximum(np.exp(self.k) - np.exp(np.asarray(x, dtype=float)), 0.)

@dataclass(frozen=True)
class DeltaPayoff(_Payoff):
    """
    Dirac mass at the log-price y. Prices under this payoff are
    transition densities.

    Args:
        y: Target log-price
    """
    y:float
    """Target log-price"""
    kind = EPayoffs.DELTA

    def strip(self) -> tuple[float, float]:
        return (-np.inf, np.inf)

    def default_contour(self) -> float:
        return 0.

    def default_value(self) -> float:
        return 0.

    def transform(self, z:Any) -> Any:
        """exp(-i xi y) / sqrt(2 pi)"""
        return exp(-1j * self.y * z) / _SQRT_2PI

    def __call__(self, x:npt.ArrayLike) -> npt.NDArray:
        x = np.asarray(x, dtype=float)
        return np.where(x == self.y, np.inf, 0.)

@dataclass(frozen=True)
class ConstantPayoff(_Payoff):
    """
    Constant payoff c. Its transform sqrt(2 pi) c delta(xi) has no contour,
    so it is only used through the bond path (see delta_combination).

    Args:
        c: Optional. Payoff value
    """
    c:float = 1.
    """Payoff value"""
    kind = EPayoffs.BOND

    def strip(self) -> tuple[float, float]:
        return (0., 0.)

    def default_contour(self) -> float:
        return 0.

    def default_value(self) -> float:
        return 0.

    def check_contour(self, xi_i:float):
        raise ContourError('a constant payoff has no contour, price it with bond_price')

    def transform(self, z:Any) -> Any:
        raise ContourError('a constant payoff has no pointwise transform, use delta_combination')

    def delta_combination(self) -> DeltaCombination:
        """Gets c * delta(xi), normalized so that pairing with exp(i xi x) gives c"""
        return DeltaCombination.dirac(self.c, (1,))

    def __call__(self, x:npt.ArrayLike) -> npt.NDArray:
        return np.full(np.shape(x), self.c, dtype=float)

def payoff_from_kind(kind:EPayoffs, value:float=0.) -> IPayoff:
    """
    Gets a payoff of the given type.

    Args:
        kind (EPayoffs): Payoff type
        value (float): Optional. Log-strike for calls and puts, target
            log-price for deltas, ignored for bonds

    Returns:
        IPayoff
    """
    kind = EPayoffs(kind)
    if kind == EPayoffs.CALL: return CallPayoff(value)
    if kind == EPayoffs.PUT: return PutPayoff(value)
    if kind == EPayoffs.DELTA: return DeltaPayoff(value)
    return ConstantPayoff()

def payoff_transform_eval(payoff:IPayoff, xi:npt.ArrayLike) -> npt.NDArray:
    """
    Evaluates a payoff transform h^(xi) = (1 / sqrt(2 pi)) int exp(-i xi x) h(x) dx.

    Args:
        payoff (IPayoff): Payoff
        xi (npt.ArrayLike): Complex frequencies on one contour

    Raises:
        ContourError: If Im(xi) is outside the strip of the payoff

    Returns:
        npt.NDArray: h^(xi)
    """
    xi = np.asarray(xi, dtype=complex)
    for xi_i in np.unique(xi.imag):
        payoff.check_contour(float(xi_i))
    return payoff.transform(xi)
