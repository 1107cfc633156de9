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

from typing import Any, Protocol, runtime_checkable
import numpy as np
import numpy.typing as npt
from . import enums

number = int|float|np.number

@runtime_checkable
class ILevyMeasure(Protocol):
    """Protocol for Levy measure classes"""
    kind: enums.EJumpMeasures
    """Gets the family of this measure"""

    def strip(self) -> tuple[float, float]:
        """Gets the open interval of Im(xi) where the jump transform converges"""
        ...
    def check_strip(self, xi:Any) -> None:
        """Raises DomainError if any Im(xi) lies outside strip()"""
        ...
    def psi(self, z:Any) -> Any:
        """Gets int nu(dz)(exp(i xi z) - 1 - i xi z) for z as array or Jet"""
        ...
    def compensator(self) -> float:
        """Gets int nu(dz)(exp(z) - 1 - z)"""
        ...
    def first_moment(self) -> float:
        """Gets int z nu(dz)"""
        ...
    def density(self, z:npt.ArrayLike) -> npt.NDArray:
        """Gets the Levy density at z"""
        ...

@runtime_checkable
class IPayoff(Protocol):
    """Protocol for payoff classes with a generalized Fourier transform"""
    kind: enums.EPayoffs
    """Gets the type of this payoff"""

    def strip(self) -> tuple[float, float]:
        """Gets the open interval of admissible contours Im(xi)"""
        ...
    def default_contour(self) -> float:
        """Gets the contour used when none is requested"""
        ...
    def default_value(self) -> float:
        """Gets h evaluated at the default state (S = 0)"""
        ...
    def check_contour(self, xi_i:float) -> None:
        """Raises ContourError if xi_i is not admissible"""
        ...
    def transform(self, z:Any) -> Any:
        """Gets the transform h^(xi) for z as array or Jet"""
        ...
    def __call__(self, x:npt.ArrayLike) -> npt.NDArray:
        """Gets the payoff h(x) in log-price"""
        ...
