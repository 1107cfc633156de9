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

Reference prices of the CEV-like presets. The rows are published put prices
of the Gaussian-jump and Variance-Gamma models with S_0 = 1, together with
their implied volatilities and Monte Carlo confidence intervals. Each table
names the basis and order that reproduce it.
'''

from dataclasses import dataclass
from typing import Optional

from levyx.enums import EBasisFamilies, EPayoffs
from levyx.models import ModelSpec, get_preset
from .request import PricingRequest, PricingResult

VALUE_TOL = 5e-4
"""Absolute tolerance of a table price"""
IV_TOL = 2e-3
"""Absolute tolerance of a table implied volatility"""

@dataclass(frozen=True)
class TableRow:
    """One published price"""
    T:float
    """Time to maturity"""
    k:float
    """Log-strike"""
    value:float
    """Price"""
    iv:Optional[float] = None
    """Implied volatility"""

@dataclass(frozen=True)
class MonteCarloInterval:
    """Published 95% confidence interval of a Monte Carlo price and its implied volatility"""
    T:float
    k:float
    lo:float
    hi:float
    iv_lo:Optional[float] = None
    iv_hi:Optional[float] = None

    @property
    def width(self) -> float:
        return self.hi - self.lo

@dataclass(frozen=True)
class ReferenceTable:
    """
    Published prices of one preset.

    Args:
        preset: Preset name
        payoff: Payoff type
        family: Basis family
        N: Expansion order
        rows: Published prices
        params: Optional. Preset parameter overrides
        mc: Optional. Monte Carlo intervals
        timing_ratio: Optional. Published ratio of the order N and order 0
            computation times over all rows
    """
    preset:str
    payoff:EPayoffs
    family:EBasisFamilies
    N:int
    rows:tuple[TableRow, ...]
    params:tuple[tuple[str, float], ...] = ()
    mc:tuple[MonteCarloInterval, ...] = ()
    timing_ratio:Optional[float] = None

    def model(self) -> ModelSpec:
        return get_preset(self.preset, **dict(self.params))

    def request(self, row:TableRow, model:Optional[ModelSpec]=None, **kwargs) -> PricingRequest:
        """Gets the request reproducing a row"""
        return PricingRequest(self.model() if model is None else model, self.payoff, T=row.T, k=row.k,
                              N=self.N, family=self.family, implied_vol=row.iv is not None, **kwargs)

    def check(self, row:TableRow, result:PricingResult) -> bool:
        """True if a result reproduces a row within VALUE_TOL and IV_TOL"""
        if abs(result.total - row.value) > VALUE_TOL:
            return False
        if row.iv is not None and result.implied_vol is not None:
            return abs(result.implied_vol - row.iv) <= IV_TOL
        return True

_Published = tuple[float, float, float, float, float, float, float]

def _table(preset:str, payoff:EPayoffs, family:EBasisFamilies, N:int,
           blocks:dict[float, tuple[_Published, ...]], **kwargs) -> ReferenceTable:
    """Builds a table from (k, value, mc_lo, mc_hi, iv, iv_lo, iv_hi) rows per maturity"""
    rows = tuple(TableRow(T, r[0], r[1], r[4]) for T, data in blocks.items() for r in data)
    mc = tuple(MonteCarloInterval(T, r[0], r[2], r[3], r[5], r[6]) for T, data in blocks.items() for r in data)
    return ReferenceTable(preset, payoff, family, N, rows, mc=mc, **kwargs)

GAUSS_PUT = _table('cev-gauss', EPayoffs.PUT, EBasisFamilies.TAYLOR, 3, {
    0.25: ((-0.6931, .0006, .0006, .0007, .5864, .5856, .5901),
           (-0.4185, .0024, .0024, .0025, .4563, .4553, .4583),
           (-0.1438, .0111, .0110, .0112, .2875, .2865, .2883),
           (0.1308, .1511, .1508, .1513, .2595, .2573, .2608),
           (0.4055, .5028, .5024, .5030, .4238, .4152, .4288)),
    1.: ((-1.2040, .0009, .0009, .0010, .5115, .5176, .5210),
         (-0.7297, .0046, .0047, .0048, .4174, .4178, .4199),
         (-0.2554, .0314, .0313, .0316, .3109, .3102, .3117),
         (0.2189, .2781, .2775, .2784, .2638, .2620, .2649),
         (0.6931, 1.0034, 1.0030, 1.0041, .3358, .3296, .3459)),
    3.: ((-1.3863, .0074, .0081, .0083, .4758, .4851, .4870),
         (-0.8664, .0224, .0224, .0227, .4031, .4029, .4045),
         (-0.3466, .0776, .0773, .0779, .3280, .3274, .3288),
         (0.1733, .3097, .3094, .3107, .2690, .2685, .2703),
         (0.6931, 1.0155, 1.0150, 1.0169, .2558, .2540, .2604)),
    5.: ((-1.6094, .0160, .0164, .0166, .5082, .5111, .5128),
         (-0.9324, .0439, .0436, .0440, .4118, .4107, .4121),
         (-0.2554, .1504, .1497, .1507, .3203, .3194, .3208),
         (0.4216, .6139, .6123, .6142, .2521, .2500, .2524),
         (1.0986, 2.0050, 2.0032, 2.0057, .2297, .2163, .2342))})
"""Gaussian-jump CEV-like model, puts, Taylor basis at x0 = 0, order 3"""

VG_PUT = _table('cev-vg', EPayoffs.PUT, EBasisFamilies.TAYLOR, 4, {
    0.5: ((-0.6931, .0014, .0014, .0015, .4631, .4624, .4652),
          (-0.4185, .0070, .0070, .0071, .4000, .3995, .4014),
          (-0.1438, .0363, .0362, .0365, .3336, .3331, .3346),
          (0.1308, .1702, .1697, .1704, .2727, .2707, .2736),
          (0.4055, .5011, .5004, .5012, .2615, .2291, .2646)),
    1.: ((-0.9163, .0028, .0027, .0028, .4687, .4678, .4702),
         (-0.5697, .0109, .0109, .0110, .4057, .4050, .4068),
         (-0.2231, .0473, .0472, .0476, .3434, .3428, .3444),
         (0.1234, .1970, .1965, .1974, .2836, .2825, .2847),
         (0.4700, .6033, .6025, .6037, .2452, .2355, .2506))})
"""
Variance-Gamma CEV-like model, puts. The published column is a two-point
expansion of order 2 whose point distance is not given; the rows are
reproduced by the converged Taylor expansion of order 4 at x0 = 0.
"""

def _random_call(T:float, params:tuple[float, ...], ratio:float, data:tuple[_Published, ...]) -> ReferenceTable:
    names = ('delta', 'beta', 'intensity', 'mean', 'std')
    return _table('cev-gauss', EPayoffs.CALL, EBasisFamilies.TAYLOR, 3, {T: data},
                  params=tuple(zip(names, params)), timing_ratio=ratio)

GAUSS_RANDOM_CALLS = (
    _random_call(0.25, (0.5432, 0.3756, 0.0518, -0.5013, 0.3839), 4.9787, (
        (-0.6, .4552, .4552, .4553, .6849, .6836, .6869),
        (-0.35, .3123, .3122, .3124, .6230, .6217, .6242),
        (-0.1, .1621, .1618, .1623, .5704, .5687, .5714),
        (0.15, .0496, .0492, .0500, .5240, .5222, .5266),
        (0.4, .0059, .0057, .0067, .4821, .4787, .4950))),
    _random_call(0.25, (0.1182, 0.9960, 0.8938, -0.4486, 0.2619), 4.77419, (
        (-0.6, .4566, .4566, .4567, .7257, .7239, .7271),
        (-0.35, .3137, .3136, .3139, .6391, .6378, .6405),
        (-0.1, .1431, .1429, .1434, .4615, .4602, .4630),
        (0.15, .0032, .0030, .0037, .2013, .1970, .2073),
        (0.4, .0000, .0000, .0000, .2510, .2567, .2616))),
    _random_call(0.25, (0.3376, 0.4805, 0.9610, -0.2420, 0.5391), 4.31915, (
        (-0.6, .4621, .4619, .4621, .8462, .8439, .8478),
        (-0.35, .3190, .3189, .3192, .6949, .6933, .6968),
        (-0.1, .1578, .1575, .1581, .5457, .5444, .5476),
        (0.15, .0451, .0448, .0456, .4990, .4974, .5021),
        (0.4, .0155, .0152, .0162, .6006, .5981, .6080))),
    _random_call(0.25, (0.2469, 0.1875, 0.4229, -0.2823, 0.7564), 4.46032, (
        (-0.6, .4592, .4591, .4593, .7871, .7857, .7900),
        (-0.35, .3100, .3099, .3102, .5965, .5950, .5986),
        (-0.1, .1341, .1338, .1343, .4083, .4069, .4096),
        (0.15, .0306, .0302, .0309, .4149, .4126, .4168),
        (0.4, .0176, .0171, .0179, .6213, .6171, .6244))),
    _random_call(1., (0.5806, 0.5829, 0.0367, -0.6622, 0.2984), 4.97872, (
        (-1., .6487, .6486, .6488, .7306, .7294, .7319),
        (-0.6, .5001, .5000, .5004, .6719, .6711, .6734),
        (-0.2, .3220, .3216, .3224, .6167, .6157, .6182),
        (0.2, .1512, .1507, .1520, .5649, .5636, .5671),
        (0.6, .0413, .0408, .0428, .5166, .5145, .5219))),
    _random_call(1., (0.3921, 0.1271, 0.4176, -0.1661, 0.5823), 4.54839, (
        (-1., .6556, .6555, .6561, .8022, .8014, .8075),
        (-0.6, .5012, .5011, .5018, .6779, .6772, .6809),
        (-0.2, .3052, .3051, .3060, .5655, .5651, .5678),
        (0.2, .1188, .1184, .1198, .4832, .4822, .4858),
        (0.6, .0299, .0296, .0315, .4708, .4694, .4772))),
    _random_call(1., (0.5803, 0.2426, 0.5926, -0.0877, 0.3236), 4.3125, (
        (-1., .6679, .6677, .6681, .9122, .9108, .9140),
        (-0.6, .5237, .5236, .5243, .7916, .7913, .7943),
        (-0.2, .3436, .3431, .3441, .6830, .6814, .6845),
        (0.2, .1592, .1581, .1596, .5851, .5823, .5862),
        (0.6, .0373, .0358, .0379, .5009, .4949, .5033))),
    _random_call(1., (0.3096, 0.6417, 0.3806, -0.02824, 0.0122), 4.9257, (
        (-1., .6323, .6323, .6324, .36740, .3680, .3708),
        (-0.6, .4554, .4553, .4554, .34493, .3442, .3456),
        (-0.2, .2283, .2281, .2284, .32159, .3208, .3221),
        (0.2, .0495, .0491, .0500, .29930, .2980, .3006),
        (0.6, .0021, .0015, .0027, .27807, .2655, .2888))))
"""
Gaussian-jump CEV-like model with random parameters, calls, Taylor basis
at x0 = 0, order 3. Four parameter sets at T = 0.25 and four at T = 1.
"""

TABLES = {'cev-gauss': GAUSS_PUT, 'cev-vg': VG_PUT,
          **{f'cev-gauss-random-{i}': t for i, t in enumerate(GAUSS_RANDOM_CALLS, 1)}}
"""Reference tables by name"""
