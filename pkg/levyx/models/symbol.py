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
from typing import Any, Callable, Optional

import numpy as np
import numpy.typing as npt

from levyx.jets import Jet
from levyx.protocols import ILevyMeasure

@dataclass(frozen=True)
class Constant:
    """Time function returning a fixed value"""
    value:float
    def __call__(self, t:float) -> float:
        return self.value

@dataclass(frozen=True)
class FrozenSymbol:
    """
    x-independent symbol of one expansion order

        phi_n(t, xi) = gamma_n (i xi - 1) + a_n (-xi^2 - i xi)
                       - i xi int nu_n(dz)(e^z - 1 - z) + int nu_n(dz)(e^(i xi z) - 1 - i xi z)

    with nu_n = weight_n * measure.

    Args:
        a: t -> a_n(t)
        gamma: t -> gamma_n(t)
        weight: t -> weight_n(t)
        measure: Optional. Levy measure
        time_homogeneous: Optional. Flag if the coefficients do not depend on t
    """
    a:Callable[[float], float]
    """t -> a_n(t)"""
    gamma:Callable[[float], float]
    """t -> gamma_n(t)"""
    weight:Callable[[float], float]
    """t -> weight of the Levy measure"""
    measure:Optional[ILevyMeasure] = None
    """Levy measure"""
    time_homogeneous:bool = True
    """Flag if the coefficients do not depend on t"""

    @classmethod
    def constant(cls, a:float, gamma:float=0., weight:float=0.,
                 measure:Optional[ILevyMeasure]=None) -> 'FrozenSymbol':
        """Gets a time-homogeneous frozen symbol"""
        return cls(Constant(float(a)), Constant(float(gamma)), Constant(float(weight)), measure, True)

    def coefficients(self, t:float) -> tuple[float, float, float]:
        """Gets (a_n, gamma_n, weight_n) at t"""
        return float(self.a(t)), float(self.gamma(t)), float(self.weight(t))

    @property
    def is_zero(self) -> bool:
        """True if all coefficients are the constant 0"""
        return (self.time_homogeneous and all(isinstance(c, Constant) and c.value == 0.
                                              for c in (self.a, self.gamma, self.weight)))

    def _build(self, t:float, z:Any) -> Any:
        a, g, w = self.coefficients(t)
        iz = 1j * z
        out = g * (iz - 1.) + a * (-(z * z) - iz)
        if w != 0. and self.measure is not None:
            self.measure.check_strip(z)
            out = out + w * (self.measure.psi(z) - self.measure.compensator() * iz)
        return out

    def evaluate(self, t:float, xi:npt.ArrayLike) -> npt.NDArray:
        """Gets phi_n(t, xi), see symbol_eval"""
        return self._build(t, np.asarray(xi, dtype=complex))

    def jet(self, t:float, xi0:npt.ArrayLike, order:int) -> Jet:
        """Gets the jet of xi -> phi_n(t, xi) at xi0"""
        return self._build(t, Jet.variable(xi0, order))

def symbol_eval(frozen:FrozenSymbol, t:float, xi:npt.ArrayLike) -> npt.NDArray:
    """
    Evaluates a frozen symbol.

    Args:
        frozen (FrozenSymbol): Symbol of one expansion order
        t (float): Time
        xi (npt.ArrayLike): Complex frequency

    Raises:
        DomainError: If xi lies outside the strip where the jump transform converges

    Returns:
        npt.NDArray: phi_n(t, xi)
    """
    return frozen.evaluate(t, xi)
