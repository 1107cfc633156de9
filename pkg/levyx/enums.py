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

from enum import Enum, IntEnum

class EJumpMeasures(str, Enum):
    GAUSSIAN = 'gaussian'
    """Normally distributed jump sizes with finite intensity"""
    VARIANCE_GAMMA = 'vg'
    """Variance-Gamma Levy measure (infinite activity)"""
    NUMERIC = 'numeric'
    """User supplied Levy density, integrated numerically"""

class EBasisFamilies(str, Enum):
    TAYLOR = 'taylor'
    """Powers of (x - xbar) around one expansion point"""
    TWO_POINT = 'two-point'
    """Two-point Taylor polynomials matching derivatives at two points"""
    HERMITE = 'hermite'
    """Hermite functions, orthonormal under exp(-(x - xbar)**2)"""

class EPayoffs(str, Enum):
    CALL = 'call'
    """European call (S - K)^+"""
    PUT = 'put'
    """European put (K - S)^+, pays K on default"""
    DELTA = 'delta'
    """Dirac mass at y, yields the transition density"""
    BOND = 'bond'
    """Constant payoff 1, yields the survival probability"""

class EEngines(str, Enum):
    HOMOGENEOUS = 'homogeneous'
    """Exact time integration, requires time-constant frozen symbols"""
    INHOMOGENEOUS = 'inhomogeneous'
    """Nested Gauss-Legendre quadrature in time"""

class ESchemes(str, Enum):
    EULER_GAUSSIAN_JUMP = 'euler'
    """Euler scheme with Bernoulli thinned Gaussian jumps"""
    VARIANCE_GAMMA_INCREMENT = 'vg'
    """Difference of Gamma increments with state dependent shape"""

class EOutputFormats(str, Enum):
    CSV = 'csv'
    """Comma separated values with header row"""
    JSON_LINES = 'jsonl'
    """One JSON object per row"""

class EExitCodes(IntEnum):
    OK = 0
    """Command finished"""
    CONFIG = 2
    """Invalid configuration or input"""
    NUMERIC = 3
    """Numerical failure"""
    REGRESSION = 4
    """A reference table row is outside its tolerance"""
