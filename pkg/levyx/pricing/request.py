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

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import numpy.typing as npt

from levyx.enums import EBasisFamilies, EEngines, EPayoffs
from levyx.expand import DEFAULT_QUAD_ORDER
from levyx.models import ModelSpec
from levyx.transform import PANEL_ORDER

@dataclass
class PricingRequest:
    """
    Everything needed to price one payoff with the asymptotic expansion.

    Args:
        model: Model
        payoff: Optional. Payoff type
        T: Optional. Maturity in years
        k: Optional. Log-strike of calls and puts, target log-price y of deltas
        t: Optional. Valuation time
        x0: Optional. Log-price at t
        N: Optional. Expansion order
        family: Optional. Basis family
        xbar: Optional. Expansion point, defaults to x0
        delta: Optional. Half distance of the two-point expansion points
        shift: Optional. Two-point constant M, defaults to f(xbar)
        engine: Optional. Time integration engine, chosen from the model if None
        contour: Optional. Imaginary part of the contour, payoff default if None
        R: Optional. Truncation of the inverse transform, adaptive if None
        quad_order: Optional. Gauss-Legendre nodes of the inhomogeneous engine
        quad_tol: Optional. Order doubling tolerance of the inhomogeneous engine
        basis_quad_order: Optional. Gauss-Hermite nodes of the Hermite basis
        panel_order: Optional. Gauss-Legendre nodes per panel of the inverse transform
        timings: Optional. Record the elapsed time per truncation order
        implied_vol: Optional. Invert the Black-Scholes formula for the total
    """
    model:ModelSpec
    """Model"""
    payoff:EPayoffs = EPayoffs.PUT
    """Payoff type"""
    T:float = 1.
    """Maturity in years"""
    k:float = 0.
    """Log-strike, or target log-price y for deltas"""
    t:float = 0.
    """Valuation time"""
    x0:float = 0.
    """Log-price at t"""
    N:int = 3
    """Expansion order"""
    family:EBasisFamilies = EBasisFamilies.TAYLOR
    """Basis family"""
    xbar:Optional[float] = None
    """Expansion point, x0 if None"""
    delta:float = 0.5
    """Half distance of the two-point expansion points"""
    shift:Optional[float] = None
    """Two-point constant M, f(xbar) if None"""
    engine:Optional[EEngines] = None
    """Time integration engine, homogeneous whenever the model allows it if None"""
    contour:Optional[float] = None
    """Imaginary part of the contour, payoff default if None"""
    R:Optional[float] = None
    """Truncation of the inverse transform, adaptive if None"""
    quad_order:int = DEFAULT_QUAD_ORDER
    """Gauss-Legendre nodes per nesting level of the inhomogeneous engine"""
    quad_tol:Optional[float] = None
    """Order doubling tolerance of the inhomogeneous engine"""
    basis_quad_order:int = 32
    """Gauss-Hermite nodes of the Hermite basis"""
    panel_order:int = PANEL_ORDER
    """Gauss-Legendre nodes per panel of the inverse transform"""
    timings:bool = False
    """Record the elapsed time per truncation order"""
    implied_vol:bool = False
    """Invert the Black-Scholes formula for the total"""

    def __post_init__(self):
        self.payoff = EPayoffs(self.payoff)
        self.family = EBasisFamilies(self.family)
        if self.engine is not None:
            self.engine = EEngines(self.engine)
        if not self.t < self.T:
            raise ValueError(f't must be < T, got t={self.t}, T={self.T}')
        if self.N < 0:
            raise ValueError(f'N must be >= 0, got {self.N}')
        if not np.isfinite(self.k):
            raise ValueError(f'k must be finite, got {self.k}')
        if self.R is not None and self.R <= 0:
            raise ValueError(f'R must be > 0, got {self.R}')

    @property
    def tau(self) -> float:
        """Time to maturity T - t"""
        return self.T - self.t

    @property
    def expansion_point(self) -> float:
        return self.x0 if self.xbar is None else self.xbar

@dataclass
class Diagnostics:
    """Numerical choices and costs of one pricing run"""
    contour:float = 0.
    """Imaginary part of the contour"""
    R:float = 0.
    """Truncation of the inverse transform"""
    tail:float = 0.
    """Largest tail estimate of the inverse transforms"""
    engine:Optional[EEngines] = None
    """Engine used"""
    jet_order:int = 0
    """Jet order of the symbols"""
    elapsed:float = 0.
    """Wall time of the run in seconds"""
    order_timings:tuple[float, ...] = ()
    """Wall time of the truncation at order 0 ... N in seconds (with PricingRequest.timings)"""

@dataclass
class PricingResult:
    """
    Terms v_0 ... v_N of the expansion at (t, x0) and their sum v^(N).

    Args:
        values: Per order values
        implied_vol: Optional. Black-Scholes volatility of the total
        spread: Optional. Credit spread of a survival value
        diagnostics: Optional. Numerical choices and costs
    """
    values:npt.NDArray
    """Per order values v_0 ... v_N"""
    implied_vol:Optional[float] = None
    """Black-Scholes volatility of the total"""
    spread:Optional[float] = None
    """Credit spread -log(total) / (T - t) of a survival value"""
    diagnostics:Diagnostics = field(default_factory=Diagnostics)
    """Numerical choices and costs"""

    @property
    def total(self) -> float:
        """v^(N) = sum of the per order values"""
        return float(np.sum(self.values))

    @property
    def N(self) -> int:
        return len(self.values) - 1

    def partial(self, n:int) -> float:
        """v^(n), the truncation at order n"""
        return float(np.sum(self.values[:n + 1]))

@dataclass
class Greeks:
    """Sensitivities of v^(N) with respect to the spot S = exp(x0)"""
    delta:float
    """dv / dS"""
    gamma:float
    """d^2v / dS^2"""
